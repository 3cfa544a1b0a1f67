#ifndef CASIMIR_OPTICAL_PATHS_HPP
#define CASIMIR_OPTICAL_PATHS_HPP

// Closed optical paths in a rectangular box [0,a] x [0,b] x [0,c] by the
// image method, and the cutoff-independent energy
//
//     E~ = -1/(2 pi^2) sum_paths phi(p) integral_box dx / l_p(x)^4.
//
// Axis 0 is the vertical (plate-to-piston) direction of length a.
//
// Image bookkeeping: along an axis of length d the image index j gives
//   j even:  x -> x + j d            (|j| reflections, displacement j d)
//   j odd:   x -> (j + 1) d - x      (|j| reflections, displacement (j+1) d - 2x)
// so a family is an index triple, its phase is eta^(|j0|+|j1|+|j2|), and its
// coincidence length is l(x) = |displacement(x)|.
//
// Summing the odd index of a reflecting axis over all j turns the
// x-integral over [0, d] into half an integral over the whole line. For a set
// S of reflecting axes (k = |S|) and translations t on the remaining axes C
// this gives the per-group integrals
//
//     k = 0:  prod_C d / |t|^4
//     k = 1:  prod_C d * (1/2) * pi / (2 |t|^3)
//     k = 2:  prod_C d * (1/4) * pi / |t|^2
//
// Groups with t = 0 (and k >= 1) are pure powers of the cutoff: they hold the
// one-reflection paths off faces, edges and corners together with their odd
// higher-order partners, and are excluded from E~.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <tuple>
#include <vector>

#include "core.hpp"
#include "special_functions.hpp"
#include "spectrum.hpp"

namespace casimir
{
	enum class PathClass
	{
		periodic,    // plate-to-plate translations only
		side,        // one reflecting axis
		edge,        // two reflecting axes (an edge reflection)
		corner,      // three reflecting axes (a corner reflection)
		horizontal   // no vertical displacement: lies in a horizontal plane
	};

	inline const char* to_string(PathClass c)
	{
		switch (c)
		{
			case PathClass::periodic: return "periodic";
			case PathClass::side: return "side";
			case PathClass::edge: return "edge";
			case PathClass::corner: return "corner";
			case PathClass::horizontal: return "horizontal";
		}
		return "?";
	}

	struct PathFamily
	{
		PathClass cls;
		std::array<int, 3> image;  // (vertical, b-axis, c-axis)
		int n_s;                   // surface reflections
		int n_e;                   // edge reflections
		int n_c;                   // corner reflections
		int phase;                 // eta^(n_s + n_c)
		double min_length;         // minimum over the box of l(x)
		bool cutoff_group;         // member of a zero-translation reflection group
		int reflections() const { return n_s + n_e + n_c; }
	};

	namespace detail
	{
		inline bool is_odd(int j) { return (j & 1) != 0; }

		inline double axis_min_displacement(int j, double d)
		{
			const int aj = std::abs(j);
			return is_odd(j) ? (aj - 1) * d : aj * d;
		}

		inline PathFamily classify(const std::array<int, 3>& j, const std::array<double, 3>& len, int eta)
		{
			int odd = 0, total = 0;
			bool translation_zero = true;
			double l2 = 0;
			for (int i = 0; i < 3; ++i)
			{
				total += std::abs(j[i]);
				if (is_odd(j[i]))
					++odd;
				else if (j[i] != 0)
					translation_zero = false;
				const double m = axis_min_displacement(j[i], len[i]);
				l2 += m * m;
			}
			PathFamily f{};
			f.image = j;
			f.n_c = odd == 3 ? 1 : 0;
			f.n_e = odd == 2 ? 1 : 0;
			f.n_s = total - 3 * f.n_c - 2 * f.n_e;
			f.phase = ((f.n_s + f.n_c) % 2 == 0) ? 1 : eta;
			f.min_length = std::sqrt(l2);
			f.cutoff_group = translation_zero && odd > 0;
			if (j[0] == 0)
				f.cls = PathClass::horizontal;
			else
				f.cls = odd == 0 ? PathClass::periodic
					: odd == 1 ? PathClass::side
					: odd == 2 ? PathClass::edge
					: PathClass::corner;
			return f;
		}

		// integral du / (T^2 + u^2)^2
		inline double primitive_1(double T, double u)
		{
			const double T2 = T * T;
			return u / (2 * T2 * (T2 + u * u)) + std::atan(u / T) / (2 * T2 * T);
		}

		// double integral du dv / (T^2 + u^2 + v^2)^2
		inline double primitive_2(double T, double u, double v)
		{
			const double su = std::sqrt(T * T + u * u), sv = std::sqrt(T * T + v * v);
			return (u / su * std::atan(v / su) + v / sv * std::atan(u / sv)) / (2 * T * T);
		}
	}

	/// All image families with r >= 2 reflections and minimal coincidence
	/// length <= max_path_length, ordered by length then image index.
	inline std::vector<PathFamily> enumerate_path_families(const BoxDims& dims, int eta, double max_path_length)
	{
		dims.validate();
		require(eta == -1 || eta == 1, "eta in {-1, +1}");
		require(max_path_length > 0, "max_path_length > 0");
		const std::array<double, 3> len{dims.a, dims.b, dims.c};
		std::array<int, 3> jmax{};
		for (int i = 0; i < 3; ++i)
			jmax[i] = static_cast<int>(std::floor(max_path_length / len[i])) + 1;

		std::vector<PathFamily> out;
		std::array<int, 3> j{};
		for (j[0] = -jmax[0]; j[0] <= jmax[0]; ++j[0])
			for (j[1] = -jmax[1]; j[1] <= jmax[1]; ++j[1])
				for (j[2] = -jmax[2]; j[2] <= jmax[2]; ++j[2])
				{
					const PathFamily f = detail::classify(j, len, eta);
					if (f.reflections() < 2 || f.min_length > max_path_length)
						continue;
					out.push_back(f);
				}
		std::sort(out.begin(), out.end(), [](const PathFamily& x, const PathFamily& y) {
			return std::tie(x.min_length, x.image) < std::tie(y.min_length, y.image);
		});
		return out;
	}

	/// integral over the box of 1 / l(x)^4 for one family, in closed form.
	/// Families of zero-translation reflection groups are rejected.
	inline double family_integral(const BoxDims& dims, const PathFamily& f)
	{
		if (f.cutoff_group)
			throw std::domain_error("family_integral: family belongs to a cutoff-dependent reflection group");
		const std::array<double, 3> len{dims.a, dims.b, dims.c};
		double T2 = 0, prefactor = 1;
		std::vector<std::pair<double, double>> ranges;  // u range of each reflecting axis
		for (int i = 0; i < 3; ++i)
		{
			const int j = f.image[i];
			if (detail::is_odd(j))
				ranges.emplace_back((j - 1) * len[i], (j + 1) * len[i]);
			else
			{
				T2 += (j * len[i]) * (j * len[i]);
				prefactor *= len[i];
			}
		}
		const double T = std::sqrt(T2);
		switch (ranges.size())
		{
			case 0:
				return prefactor / (T2 * T2);
			case 1:
			{
				const auto [u0, u1] = ranges[0];
				return prefactor / 2 * (detail::primitive_1(T, u1) - detail::primitive_1(T, u0));
			}
			case 2:
			{
				const auto [u0, u1] = ranges[0];
				const auto [v0, v1] = ranges[1];
				using detail::primitive_2;
				return prefactor / 4
					* (primitive_2(T, u1, v1) - primitive_2(T, u0, v1) - primitive_2(T, u1, v0) + primitive_2(T, u0, v0));
			}
			default:
				break;
		}
		throw std::logic_error("family_integral: three reflecting axes always form a cutoff group");
	}

	/// Contribution of one family to E~.
	inline double family_energy(const BoxDims& dims, const PathFamily& f)
	{
		return -f.phase * family_integral(dims, f) / (2 * pi * pi);
	}

	struct PathEnergy
	{
		double value;
		double truncation_bound;
		double max_path_length;
		long long families_included;  // translation groups summed
	};

	namespace detail
	{
		// Translation lattice of the axes in `axes` (spacing 2 d_i) for groups
		// with k = 3 - |axes| reflecting axes. Returns the truncated sum of
		// I_k(|t|) over 0 < |t| <= L, the integral estimate of the rest, and a
		// bound on the error of that estimate from lattice-point counting.
		struct GroupSum
		{
			long double partial;
			double tail;
			double bound;
			long long points;
		};

		inline double group_kernel(int k, double T)
		{
			switch (k)
			{
				case 0: return 1 / (T * T * T * T);
				case 1: return pi / (2 * T * T * T);
				default: return pi / (T * T);
			}
		}

		inline GroupSum group_sum(const std::vector<double>& spacing, double L)
		{
			const int D = static_cast<int>(spacing.size());
			const int k = 3 - D;
			GroupSum g{0, 0, 0, 0};
			Accumulator acc;
			std::array<int, 3> nmax{0, 0, 0};
			for (int i = 0; i < D; ++i)
				nmax[i] = static_cast<int>(std::floor(L / spacing[i]));
			const double L2 = L * L;
			for (int n0 = -nmax[0]; n0 <= nmax[0]; ++n0)
				for (int n1 = (D > 1 ? -nmax[1] : 0); n1 <= (D > 1 ? nmax[1] : 0); ++n1)
					for (int n2 = (D > 2 ? -nmax[2] : 0); n2 <= (D > 2 ? nmax[2] : 0); ++n2)
					{
						if (n0 == 0 && n1 == 0 && n2 == 0) continue;
						double t2 = (n0 * spacing[0]) * (n0 * spacing[0]);
						if (D > 1) t2 += (n1 * spacing[1]) * (n1 * spacing[1]);
						if (D > 2) t2 += (n2 * spacing[2]) * (n2 * spacing[2]);
						if (t2 > L2) continue;
						acc += group_kernel(k, std::sqrt(t2));
						++g.points;
					}
			g.partial = acc.value();

			double cell = 1, diag2 = 0;
			for (double s : spacing)
			{
				cell *= s;
				diag2 += s * s;
			}
			const double delta = std::sqrt(diag2) / 2;
			// kernel c r^-p, ball volume V_D r^D, discrepancy e(r) = sum_m e_m r^m
			double c = 1, p = 4;
			std::vector<double> e;  // coefficients of e(r) * cell
			switch (D)
			{
				case 3:
					c = 1; p = 4;
					g.tail = 4 * pi / L / cell;
					e = {(4 * pi / 3) * 2 * delta * delta * delta, 0, (4 * pi / 3) * 6 * delta};
					break;
				case 2:
					c = pi / 2; p = 3;
					g.tail = pi * pi / L / cell;
					e = {0, pi * 4 * delta};
					break;
				default:
					c = pi; p = 2;
					g.tail = 2 * pi / L / cell;
					e = {2 * 2 * delta};
					break;
			}
			// |tail - estimate| <= e(L) I(L) + integral_L^inf e(r) |I'(r)| dr
			double bound = 0;
			for (std::size_t m = 0; m < e.size(); ++m)
			{
				bound += e[m] * c * std::pow(L, m - p);
				bound += e[m] * c * p * std::pow(L, m - p) / (p - m);
			}
			g.bound = bound / cell;
			return g;
		}
	}

	/// E~ for a closed box by direct summation over path-family groups with
	/// translation length <= max_path_length. The omitted groups are estimated
	/// by the integral test and truncation_bound bounds the error of that
	/// estimate. Converges like max_path_length^-2.
	inline PathEnergy path_energy(const BoxDims& dims, int eta, double max_path_length)
	{
		dims.validate();
		require(eta == -1 || eta == 1, "eta in {-1, +1}");
		const std::array<double, 3> len{dims.a, dims.b, dims.c};
		require(max_path_length >= 2 * dims.max_dim(), "max_path_length >= 2 max(a, b, c) (includes every r = 2 periodic family)");
		require(max_path_length > std::sqrt(len[0] * len[0] + len[1] * len[1] + len[2] * len[2]),
			"max_path_length exceeds the translation-lattice half diagonal");

		Accumulator value;
		double bound = 0;
		long long groups = 0;
		// Reflecting set S as a bitmask; |S| = 3 groups are all cutoff groups.
		for (int mask = 0; mask < 7; ++mask)
		{
			std::vector<double> spacing;
			double weight = 1;
			int k = 0;
			for (int i = 0; i < 3; ++i)
				if (mask & (1 << i))
				{
					++k;
					weight /= 2;
				}
				else
				{
					spacing.push_back(2 * len[i]);
					weight *= len[i];
				}
			if (k % 2 == 1)
				weight *= eta;
			weight *= -1 / (2 * pi * pi);
			const auto g = detail::group_sum(spacing, max_path_length);
			value += weight * (g.partial + g.tail);
			bound += std::fabs(weight) * g.bound;
			groups += g.points;
		}
		return {static_cast<double>(value.value()), bound, max_path_length, groups};
	}

	/// E~ for a closed box with the lattice sums resummed into Epstein zeta
	/// values (exponentially convergent):
	///   E~ = -abc Z3(a^2,b^2,c^2;4) / (32 pi^2)
	///        - eta / (64 pi) sum_{pairs} d_i d_j Z2(d_i^2, d_j^2; 3)
	///        - zeta(2) / (16 pi) (1/a + 1/b + 1/c)
	inline Estimate path_energy_exact(const BoxDims& dims, int eta)
	{
		dims.validate();
		require(eta == -1 || eta == 1, "eta in {-1, +1}");
		const double a = dims.a, b = dims.b, c = dims.c;
		const Estimate z3 = epstein_zeta_3_quartic(a * a, b * b, c * c);
		const Estimate zab = epstein_zeta_2_resummed(a * a, b * b, 3);
		const Estimate zbc = epstein_zeta_2_resummed(b * b, c * c, 3);
		const Estimate zac = epstein_zeta_2_resummed(a * a, c * c, 3);

		Accumulator acc;
		acc += -a * b * c * z3.value / (32 * pi * pi);
		acc += -eta / (64 * pi) * (a * b * zab.value + b * c * zbc.value + a * c * zac.value);
		acc += -riemann_zeta(2) / (16 * pi) * (1 / a + 1 / b + 1 / c);
		const double bound = a * b * c * z3.error_bound / (32 * pi * pi)
			+ (a * b * zab.error_bound + b * c * zbc.error_bound + a * c * zac.error_bound) / (64 * pi);
		const double value = static_cast<double>(acc.value());
		return {value, bound + 8 * std::numeric_limits<double>::epsilon() * std::fabs(value)};
	}

	/// Energy per unit height of the horizontal path families (no vertical
	/// displacement) in a tall box of cross section b x c:
	///   -[bc Z2(b^2,c^2;4) / (32 pi^2) + eta zeta(3) (1/b^2 + 1/c^2) / (32 pi)].
	/// For b = c this is -J_eta / (32 pi^2 A).
	inline Estimate horizontal_path_energy_density(const BoxDims& dims, int eta)
	{
		dims.validate();
		require(eta == -1 || eta == 1, "eta in {-1, +1}");
		const double b = dims.b, c = dims.c;
		const Estimate z = epstein_zeta_2_resummed(b * b, c * c, 4);
		const double value = -(b * c * z.value / (32 * pi * pi)
			+ eta * riemann_zeta(3) * (1 / (b * b) + 1 / (c * c)) / (32 * pi));
		return {value, b * c * z.error_bound / (32 * pi * pi) + 4 * std::numeric_limits<double>::epsilon() * std::fabs(value)};
	}

	/// Force on the piston (h -> infinity) from the optical-path energies:
	///   F = -d E~_I(a, b, c) / da + (horizontal density of region II),
	/// with the derivative taken by a five-point finite difference. The error
	/// bound combines a Richardson estimate of the stencil error, the
	/// energy bounds divided by the step, and rounding.
	inline Estimate piston_force_from_paths(double a, double b, double c, int eta)
	{
		require(a > 0, "a > 0");
		const BoxDims base{a, b, c};
		base.validate();

		auto derivative = [&](double h, double& energy_bound) {
			const std::array<double, 4> offsets{-2, -1, 1, 2};
			const std::array<double, 4> weights{1, -8, 8, -1};
			long double sum = 0;
			energy_bound = 0;
			for (int i = 0; i < 4; ++i)
			{
				const Estimate e = path_energy_exact({a + offsets[i] * h, b, c}, eta);
				sum += weights[i] * static_cast<long double>(e.value);
				energy_bound += std::fabs(weights[i]) * e.error_bound;
			}
			energy_bound /= 12 * h;
			return static_cast<double>(sum / (12 * h));
		};

		const double h = 2e-3 * a;
		double eb1 = 0, eb2 = 0;
		const double d1 = derivative(h, eb1);
		const double d2 = derivative(h / 2, eb2);
		// O(h^4) stencil: Richardson extrapolate and keep the correction as the bound.
		const double extrapolated = d2 + (d2 - d1) / 15;
		const Estimate horizontal = horizontal_path_energy_density(base, eta);
		const double force = -extrapolated + horizontal.value;
		const double rounding = 32 * std::numeric_limits<double>::epsilon()
			* std::fabs(path_energy_exact(base, eta).value) / h;
		const double bound = std::fabs(d2 - d1) / 15 + 2 * eb2 + rounding + horizontal.error_bound;
		return {force, bound};
	}
}

#endif
