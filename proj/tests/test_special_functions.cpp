#include <cmath>

#include <gtest/gtest.h>

#include <casimir/special_functions.hpp>

using namespace casimir;

namespace
{
	// zeta(3) = (5/2) sum_{k>=1} (-1)^(k+1) / (k^3 C(2k, k)); converges like 4^-k.
	double zeta3_central_binomial()
	{
		long double sum = 0, binom = 1;
		for (int k = 1; k <= 40; ++k)
		{
			binom = binom * (2 * k) * (2 * k - 1) / (static_cast<long double>(k) * k);
			sum += ((k % 2) ? 1 : -1) / (static_cast<long double>(k) * k * k * binom);
		}
		return static_cast<double>(2.5L * sum);
	}

	// Catalan's constant from the alternating series, averaging consecutive
	// partial sums (the error of the average is O(N^-3)).
	double catalan_series()
	{
		long double s = 0, prev = 0;
		const int N = 200000;
		for (int k = 0; k <= N; ++k)
		{
			prev = s;
			const long double d = 2.0L * k + 1;
			s += ((k % 2) ? -1 : 1) / (d * d);
		}
		return static_cast<double>((s + prev) / 2);
	}

	// Plain zeta(s) for odd s: direct sum plus Euler-Maclaurin tail to 2 terms.
	double zeta_direct(int s)
	{
		const int N = 1000;
		long double sum = 0;
		for (int n = N - 1; n >= 1; --n)
			sum += std::pow(static_cast<long double>(n), -s);
		const long double Nl = N;
		sum += std::pow(Nl, 1 - s) / (s - 1) + std::pow(Nl, -s) / 2 + s * std::pow(Nl, -s - 1) / 12;
		return static_cast<double>(sum);
	}
}

TEST(RiemannZeta, MatchesCentralBinomialSeriesAtThree)
{
	EXPECT_NEAR(riemann_zeta(3), zeta3_central_binomial(), 1e-15);
	EXPECT_NEAR(riemann_zeta(3), 1.2020569031595942, 1e-15);
}

TEST(RiemannZeta, EvenValuesAreClosedForms)
{
	EXPECT_DOUBLE_EQ(riemann_zeta(2), pi * pi / 6);
	EXPECT_DOUBLE_EQ(riemann_zeta(4), std::pow(pi, 4) / 90);
}

TEST(RiemannZeta, OddValuesAgreeWithDirectSum)
{
	for (int s : {3, 5, 7, 9})
		EXPECT_NEAR(riemann_zeta(s), zeta_direct(s), 1e-13) << "s = " << s;
}

TEST(RiemannZeta, DecreasesTowardOne)
{
	double prev = riemann_zeta(2);
	for (int s = 3; s <= 30; ++s)
	{
		const double z = riemann_zeta(s);
		EXPECT_LT(z, prev);
		EXPECT_GT(z, 1.0);
		prev = z;
	}
}

TEST(RiemannZeta, RejectsPole)
{
	EXPECT_THROW(riemann_zeta(1), std::domain_error);
	EXPECT_THROW(riemann_zeta(0), std::domain_error);
}

TEST(DirichletBeta, CatalanFromSeries)
{
	EXPECT_NEAR(catalan(), catalan_series(), 1e-14);
	EXPECT_NEAR(catalan(), 0.91596559417721901, 1e-15);
}

TEST(DirichletBeta, KnownValues)
{
	EXPECT_DOUBLE_EQ(dirichlet_beta(1), pi / 4);
	EXPECT_NEAR(dirichlet_beta(3), std::pow(pi, 3) / 32, 1e-15);
	EXPECT_THROW(dirichlet_beta(0), std::domain_error);
}

TEST(Epstein, SquareQuarticIsZetaTimesBeta)
{
	const double oracle = 4 * (pi * pi / 6) * catalan_series();
	const Estimate z = epstein_zeta_2({1, 1, 4, 1e-10});
	EXPECT_NEAR(z.value, oracle, 1e-9 * oracle);
	EXPECT_LE(std::fabs(z.value - oracle), z.error_bound + 1e-13);
}

TEST(Epstein, SquareCubicMatchesLiterature)
{
	// sum' (m^2 + k^2)^(-3/2) = 4 zeta(3/2) beta(3/2)
	// the r^-3 tail converges slowly; 1e-5 keeps the shell count manageable
	const Estimate z = epstein_zeta_2({1, 1, 3, 1e-5});
	EXPECT_NEAR(z.value, 9.0336216831, 1e-4);
	EXPECT_NEAR(epstein_zeta_2_resummed(1, 1, 3).value, 9.03362168310095, 1e-11);
}

TEST(Epstein, ShellAndResummedRoutesAgree)
{
	for (auto [x1, x2] : {std::pair{1.0, 1.0}, {1.0, 2.0}, {0.3, 5.0}, {4.0, 1.0}})
		for (int n : {3, 4})
		{
			const Estimate shell = epstein_zeta_2({x1, x2, static_cast<double>(n), n == 3 ? 1e-5 : 1e-10});
			const Estimate res = epstein_zeta_2_resummed(x1, x2, n);
			EXPECT_LE(std::fabs(shell.value - res.value), shell.error_bound + res.error_bound + 1e-15 * res.value)
				<< x1 << " " << x2 << " n=" << n;
		}
}

TEST(Epstein, SymmetricInWeights)
{
	const Estimate a = epstein_zeta_2({1, 2.5, 4, 1e-10});
	const Estimate b = epstein_zeta_2({2.5, 1, 4, 1e-10});
	EXPECT_NEAR(a.value, b.value, a.error_bound + b.error_bound);
}

TEST(Epstein, HomogeneousInWeights)
{
	// Z(l x1, l x2; n) = l^(-n/2) Z(x1, x2; n)
	for (double l : {0.25, 3.0})
	{
		const double base = epstein_zeta_2_resummed(1, 1.7, 4).value;
		const double scaled = epstein_zeta_2_resummed(l, l * 1.7, 4).value;
		EXPECT_NEAR(scaled, base / (l * l), 1e-12 * base / (l * l));
	}
}

TEST(Epstein, PartialSumsIncreaseWithRadius)
{
	const LatticeSumSpec spec{1, 1.3, 4, 1e-10};
	double prev = 0;
	for (double r : {1.0, 2.0, 5.0, 20.0, 100.0})
	{
		const double s = epstein_partial_sum(spec, r);
		EXPECT_GT(s, prev);
		prev = s;
	}
	EXPECT_LT(prev, epstein_zeta_2(spec).value);
}

TEST(Epstein, ErrorsNameTheViolation)
{
	EXPECT_THROW(epstein_zeta_2({0, 1, 4, 1e-10}), std::domain_error);
	EXPECT_THROW(epstein_zeta_2({1, -1, 4, 1e-10}), std::domain_error);
	EXPECT_THROW(epstein_zeta_2({1, 1, 2, 1e-10}), std::domain_error);
	EXPECT_THROW(epstein_zeta_2({1, 1, 4, 0}), std::domain_error);
	EXPECT_THROW(epstein_zeta_2({1, 1, 4, 1e-30}), std::domain_error);
	EXPECT_THROW(epstein_zeta_2_resummed(1, 1, 5), std::domain_error);
}

TEST(Epstein, CubicLatticeQuartic)
{
	// sum' (m^2 + n^2 + k^2)^-2 over Z^3
	const Estimate z = epstein_zeta_3_quartic(1, 1, 1);
	EXPECT_NEAR(z.value, 16.532315959761669, 1e-9);
	const Estimate p = epstein_zeta_3_quartic(3, 1, 2);
	const Estimate q = epstein_zeta_3_quartic(1, 2, 3);
	EXPECT_NEAR(p.value, q.value, p.error_bound + q.error_bound);
}

TEST(JConstants, MatchIndependentClosedForm)
{
	const double z2 = 4 * (pi * pi / 6) * catalan_series();
	const double zeta3 = zeta3_central_binomial();
	const JConstants j = j_constants();
	EXPECT_NEAR(j.j_dirichlet, z2 - 2 * pi * zeta3, 1e-8);
	EXPECT_NEAR(j.j_neumann, z2 + 2 * pi * zeta3, 1e-8);
	EXPECT_NEAR(j.j_em, 2 * z2, 1e-8);
}

TEST(JConstants, PublishedDigits)
{
	EXPECT_NEAR(j_constant(-1), -1.5259, 1e-4);
	EXPECT_NEAR(j_constant(1), 13.579, 1e-3);
	EXPECT_NEAR(j_constants().j_em, 12.053, 1e-3);
	EXPECT_THROW(j_constant(0), std::domain_error);
}
