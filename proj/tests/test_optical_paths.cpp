#include <cmath>
#include <cstdlib>
#include <vector>

#include <gtest/gtest.h>

#include <casimir/forces.hpp>
#include <casimir/optical_paths.hpp>
#include <casimir/spectrum.hpp>

using namespace casimir;

namespace
{
	// Shortest coincidence length along one axis, from the image positions.
	// even j: the image sits at x + j d. odd j: at (j + 1) d - x, x in [0, d].
	double axis_min(int j, double d)
	{
		if (j % 2 == 0) return std::abs(j) * d;
		const double lo = (j - 1) * d, hi = (j + 1) * d;
		return (lo <= 0 && hi >= 0) ? 0 : std::min(std::fabs(lo), std::fabs(hi));
	}

	// Midpoint rule for integral over the box of 1 / l(x)^4; only reflecting
	// axes vary l, so the others just multiply by their length.
	double integral_by_quadrature(const BoxDims& d, const std::array<int, 3>& j, int n)
	{
		const double len[3] = {d.a, d.b, d.c};
		std::vector<int> refl;
		double t2 = 0, pre = 1;
		for (int i = 0; i < 3; ++i)
			if (j[i] % 2 != 0) refl.push_back(i);
			else { t2 += (j[i] * len[i]) * (j[i] * len[i]); pre *= len[i]; }
		auto disp = [&](int i, double x) { return (j[i] + 1) * len[i] - 2 * x; };
		long double s = 0;
		if (refl.size() == 1)
		{
			const double h = len[refl[0]] / n;
			for (int p = 0; p < n; ++p)
			{
				const double u = disp(refl[0], (p + 0.5) * h);
				const double l2 = t2 + u * u;
				s += h / (l2 * l2);
			}
		}
		else
		{
			const double h0 = len[refl[0]] / n, h1 = len[refl[1]] / n;
			for (int p = 0; p < n; ++p)
				for (int q = 0; q < n; ++q)
				{
					const double u = disp(refl[0], (p + 0.5) * h0), v = disp(refl[1], (q + 0.5) * h1);
					const double l2 = t2 + u * u + v * v;
					s += h0 * h1 / (l2 * l2);
				}
		}
		return static_cast<double>(pre * s);
	}
}

TEST(PathFamilies, CompleteAgainstLatticeCount)
{
	const BoxDims d{1, 1.4, 0.9};
	const double L = 6;
	long long brute = 0;
	for (int i = -12; i <= 12; ++i)
		for (int j = -12; j <= 12; ++j)
			for (int k = -12; k <= 12; ++k)
			{
				// an edge (corner) reflection flips two (three) axes at once but counts once
				const int odd = (i % 2 != 0) + (j % 2 != 0) + (k % 2 != 0);
				const int r = std::abs(i) + std::abs(j) + std::abs(k) - (odd == 2) - 2 * (odd == 3);
				if (r < 2) continue;
				const double l = std::hypot(axis_min(i, d.a), axis_min(j, d.b), axis_min(k, d.c));
				if (l <= L) ++brute;
			}
	EXPECT_EQ(static_cast<long long>(enumerate_path_families(d, -1, L).size()), brute);
}

TEST(PathFamilies, SortedByLengthWithShortestPeriodicFirst)
{
	const auto fam = enumerate_path_families({2, 1, 3}, 1, 4.5);
	for (std::size_t i = 1; i < fam.size(); ++i)
		EXPECT_LE(fam[i - 1].min_length, fam[i].min_length);
	for (const auto& f : fam)
	{
		EXPECT_GE(f.reflections(), 2);
		EXPECT_LE(f.min_length, 4.5);
	}
}

TEST(PathFamilies, ClassificationAndReflectionCounts)
{
	const auto fam = enumerate_path_families({1, 1, 1}, -1, 5);
	for (const auto& f : fam)
	{
		int odd = 0, total = 0;
		for (int j : f.image) { odd += (j % 2 != 0); total += std::abs(j); }
		EXPECT_EQ(f.reflections() + f.n_e + 2 * f.n_c, total);
		EXPECT_EQ(f.n_c, odd == 3 ? 1 : 0);
		EXPECT_EQ(f.n_e, odd == 2 ? 1 : 0);
		if (f.image[0] == 0)
		{
			EXPECT_EQ(f.cls, PathClass::horizontal);
		}
		else if (odd == 0)
		{
			EXPECT_EQ(f.cls, PathClass::periodic);
		}
		else if (odd == 1)
		{
			EXPECT_EQ(f.cls, PathClass::side);
		}
	}
}

TEST(PathFamilies, PhaseFlipsWithOddReflectionNumber)
{
	const auto dirichlet = enumerate_path_families({1, 1.2, 0.7}, -1, 4);
	const auto neumann = enumerate_path_families({1, 1.2, 0.7}, 1, 4);
	ASSERT_EQ(dirichlet.size(), neumann.size());
	for (std::size_t i = 0; i < dirichlet.size(); ++i)
	{
		const auto& f = dirichlet[i];
		ASSERT_EQ(f.image, neumann[i].image);
		EXPECT_EQ(neumann[i].phase, 1);
		int total = 0;
		for (int j : f.image) total += std::abs(j);
		EXPECT_EQ(f.phase, total % 2 ? -1 : 1);
		if (!f.cutoff_group)
		{
			EXPECT_DOUBLE_EQ(family_energy({1, 1.2, 0.7}, f), f.phase * family_energy({1, 1.2, 0.7}, neumann[i]));
		}
	}
}

TEST(PathFamilies, ClosedFormIntegralsMatchQuadrature)
{
	const BoxDims d{1, 1.3, 0.8};
	for (const std::array<int, 3> j : {std::array{1, 2, 0}, std::array{3, 0, -2}, std::array{1, 1, 2}, std::array{-3, 1, 2}})
	{
		const PathFamily f = detail::classify(j, {d.a, d.b, d.c}, -1);
		ASSERT_FALSE(f.cutoff_group);
		const double exact = family_integral(d, f);
		const double quad = integral_by_quadrature(d, j, 800);
		EXPECT_NEAR(exact, quad, 1e-5 * exact) << j[0] << j[1] << j[2];
	}
	const PathFamily periodic = detail::classify({2, 0, 0}, {d.a, d.b, d.c}, 1);
	EXPECT_NEAR(family_integral(d, periodic), d.b * d.c / std::pow(2 * d.a, 4), 1e-15);
}

TEST(PathFamilies, OddImageSumsGiveHalfLineIntegrals)
{
	// sum over odd j0 of one reflecting axis: b c (1/2) pi / (2 |t|^3)
	const BoxDims d{0.7, 1.1, 1.3};
	const double t = 2 * d.b;
	long double one = 0, two = 0;
	for (int j = -4001; j <= 4001; j += 2)
	{
		one += family_integral(d, detail::classify({j, 2, 0}, {d.a, d.b, d.c}, 1));
		for (int k = -401; k <= 401; k += 2)
			two += family_integral(d, detail::classify({j, 2, k}, {d.a, d.b, d.c}, 1));
	}
	EXPECT_NEAR(static_cast<double>(one), d.b * d.c * 0.5 * pi / (2 * t * t * t), 1e-9);
	// two reflecting axes: b (1/4) pi / |t|^2, truncated second index costs ~1e-3
	EXPECT_NEAR(static_cast<double>(two), d.b * 0.25 * pi / (t * t), 2e-3 * d.b * 0.25 * pi / (t * t));
}

TEST(PathFamilies, CutoffGroupsRejected)
{
	const std::array<double, 3> len{1, 1, 1};
	for (const std::array<int, 3> j : {std::array{3, 0, 0}, std::array{1, 1, 0}, std::array{1, -1, 3}})
	{
		const PathFamily f = detail::classify(j, len, -1);
		EXPECT_TRUE(f.cutoff_group);
		EXPECT_THROW(family_integral({1, 1, 1}, f), std::domain_error);
	}
	EXPECT_FALSE(detail::classify({1, 2, 0}, len, -1).cutoff_group);
	EXPECT_FALSE(detail::classify({2, 0, 0}, len, -1).cutoff_group);
}

TEST(PathEnergy, DirectSumConvergesToResummed)
{
	for (int eta : {-1, 1})
		for (const BoxDims d : {BoxDims{1, 1, 1}, BoxDims{0.5, 1, 1.5}})
		{
			const Estimate exact = path_energy_exact(d, eta);
			double prev = 1e300;
			for (double L : {10.0, 20.0, 40.0})
			{
				const PathEnergy p = path_energy(d, eta, L);
				const double diff = std::fabs(p.value - exact.value);
				EXPECT_LE(diff, p.truncation_bound + exact.error_bound);
				EXPECT_LT(diff, prev);
				prev = diff;
			}
		}
}

TEST(PathEnergy, SumOfFamiliesApproachesResummed)
{
	const BoxDims d{1, 1, 1};
	// truncating by family length converges slowly (side families are
	// conditionally ordered), so only a steady approach from one side is checked
	const double exact = path_energy_exact(d, -1).value;
	std::vector<double> diffs;
	for (double L : {4.0, 8.0, 14.0})
	{
		long double s = 0;
		for (const auto& f : enumerate_path_families(d, -1, L))
			if (!f.cutoff_group) s += family_energy(d, f);
		diffs.push_back(static_cast<double>(s) - exact);
	}
	for (std::size_t i = 1; i < diffs.size(); ++i)
	{
		EXPECT_GT(diffs[i], 0);
		EXPECT_LT(diffs[i], diffs[i - 1]);
	}
	EXPECT_LT(diffs.back(), 0.5 * diffs.front());
}

TEST(PathEnergy, MatchesModeSumFiniteParts)
{
	// the cutoff-independent part of the regulated mode sum is the path energy
	const BoxDims d{1, 1, 1};
	const auto grid = default_weyl_grid(d);
	const WeylFit fd = fit_weyl_coefficients(d, Field::scalar_dirichlet, grid, 2);
	const WeylFit fn = fit_weyl_coefficients(d, Field::scalar_neumann, grid, 2);
	const Estimate pd = path_energy_exact(d, -1), pn = path_energy_exact(d, 1);
	EXPECT_NEAR(fd.constant, pd.value, constant_uncertainty(fd) + pd.error_bound);
	EXPECT_NEAR(fn.constant, pn.value, constant_uncertainty(fn) + pn.error_bound);
	EXPECT_NEAR(fd.constant, pd.value, 1e-4 * std::fabs(pd.value));
	EXPECT_NEAR(fn.constant, pn.value, 1e-4 * std::fabs(pn.value));
}

TEST(PathEnergy, ScalesInverselyWithSize)
{
	for (int eta : {-1, 1})
	{
		const double e = path_energy_exact({0.6, 1, 1.7}, eta).value;
		for (double l : {0.5, 3.0})
			EXPECT_NEAR(path_energy_exact({0.6 * l, l, 1.7 * l}, eta).value, e / l, 1e-12 * std::fabs(e / l));
	}
}

TEST(PathEnergy, Errors)
{
	EXPECT_THROW(path_energy({1, 1, 1}, 0, 10), std::domain_error);
	EXPECT_THROW(path_energy({1, 1, 1}, -1, 1.5), std::domain_error);
	EXPECT_THROW(path_energy_exact({1, 0, 1}, -1), std::domain_error);
	EXPECT_THROW(enumerate_path_families({1, 1, 1}, -1, -2), std::domain_error);
}

TEST(HorizontalPaths, SquareSectionGivesJ)
{
	for (int eta : {-1, 1})
	{
		const Estimate h = horizontal_path_energy_density({1, 2, 2}, eta);
		EXPECT_NEAR(h.value, -j_constant(eta) / (32 * pi * pi * 4), 1e-12);
	}
}

TEST(HorizontalPaths, CancelRegionOneSlopeAtLargeSeparation)
{
	// far from the base the box energy grows like a times the horizontal
	// density; region II removes exactly that slope, leaving an exponentially
	// small force
	for (int eta : {-1, 1})
	{
		const Estimate force = piston_force_from_paths(3, 1, 1, eta);
		const double density = horizontal_path_energy_density({3, 1, 1}, eta).value;
		// Neumann keeps the power law of its massless transverse mode
		const double massless = eta > 0 ? -riemann_zeta(2) / (4 * pi * 9) : 0;
		EXPECT_LT(std::fabs(force.value - massless), 1e-6 * std::fabs(density));
		const ForceResult modes = force_scalar_exact(3, 1, 1, eta);
		EXPECT_NEAR(force.value, modes.total, force.error_bound + modes.total_bound);
	}
}
