#ifndef CASIMIR_SPECIAL_FUNCTIONS_HPP
#define CASIMIR_SPECIAL_FUNCTIONS_HPP

// Zeta-type constants: Riemann zeta at integers, Dirichlet beta, and
// two- and three-dimensional Epstein lattice sums.
//
// Two independent routes are provided for the 2-D Epstein sum:
//   * epstein_zeta_2           direct shell summation with a lattice-point
//                              counting tail bound (slow, but elementary);
//   * epstein_zeta_2_resummed  one index resummed in closed form, leaving an
//                              exponentially convergent remainder.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "core.hpp"

namespace casimir
{
	/// Riemann zeta at an integer argument s >= 2.
	/// Even arguments up to 12 use the closed forms; the rest an
	/// Euler-Maclaurin corrected direct series.
	inline double riemann_zeta(int s)
	{
		if (s <= 1)
			throw std::domain_error("riemann_zeta: s must be >= 2 (got " + std::to_string(s) + ")");

		switch (s)
		{
			case 2: return pi * pi / 6;
			case 4: return std::pow(pi, 4) / 90;
			case 6: return std::pow(pi, 6) / 945;
			case 8: return std::pow(pi, 8) / 9450;
			case 10: return std::pow(pi, 10) / 93555;
			case 12: return 691 * std::pow(pi, 12) / 638512875;
			default: break;
		}

		// sum_{n<N} n^-s + N^-s/2 + N^{1-s}/(s-1) + sum_j B_2j/(2j)! (s)_{2j-1} N^{-s-2j+1}
		constexpr int N = 20;
		constexpr std::array<long double, 5> bernoulli{
			1.0L / 6, -1.0L / 30, 1.0L / 42, -1.0L / 30, 5.0L / 66};
		const long double sl = s;
		Accumulator acc;
		for (int n = N - 1; n >= 1; --n)
			acc += std::pow(static_cast<long double>(n), -sl);
		const long double Nl = N;
		acc += std::pow(Nl, -sl) / 2;
		acc += std::pow(Nl, 1 - sl) / (sl - 1);
		long double rising = sl;    // (s)_{2j-1}
		long double factorial = 2;  // (2j)!
		for (std::size_t j = 1; j <= bernoulli.size(); ++j)
		{
			acc += bernoulli[j - 1] / factorial * rising * std::pow(Nl, -sl - 2 * j + 1);
			rising *= (sl + 2 * j - 1) * (sl + 2 * j);
			factorial *= (2 * j + 1) * (2 * j + 2);
		}
		return static_cast<double>(acc.value());
	}

	/// Dirichlet beta(s) = sum_k (-1)^k (2k+1)^-s, s >= 1, by
	/// Cohen-Villegas-Zagier acceleration of the alternating series.
	inline double dirichlet_beta(int s)
	{
		if (s < 1)
			throw std::domain_error("dirichlet_beta: s must be >= 1");
		if (s == 1)
			return pi / 4;
		constexpr int n = 40;
		long double d = std::pow(3 + std::sqrt(8.0L), n);
		d = (d + 1 / d) / 2;
		long double b = -1, c = -d, sum = 0;
		for (int k = 0; k < n; ++k)
		{
			c = b - c;
			sum += c / std::pow(2.0L * k + 1, static_cast<long double>(s));
			b = (k + n) * (k - n) * b / ((k + 0.5L) * (k + 1));
		}
		return static_cast<double>(sum / d);
	}

	inline double catalan() { return dirichlet_beta(2); }

	struct LatticeSumSpec
	{
		double x1 = 1;
		double x2 = 1;
		double exponent = 4;  // n in (x1 m^2 + x2 k^2)^(-n/2)
		double rel_tol = 1e-10;
	};

	namespace detail
	{
		inline void validate(const LatticeSumSpec& spec)
		{
			if (!(spec.x1 > 0) || !(spec.x2 > 0))
				throw std::domain_error("epstein_zeta_2: weights must satisfy x1 > 0, x2 > 0");
			if (!(spec.exponent > 2))
				throw std::domain_error("epstein_zeta_2: exponent n > 2 required for convergence");
			if (!(spec.rel_tol > 0))
				throw std::domain_error("epstein_zeta_2: tolerance must satisfy eps > 0");
		}

		// Geometry of the scaled lattice (sqrt(x1) m, sqrt(x2) k): cell area and
		// half diagonal. Every lattice point within radius r has its cell inside
		// radius r + delta, and the disc of radius r - delta is covered by such
		// cells, so |N(r) - pi r^2 / cell| <= pi (2 r delta + delta^2) / cell.
		struct PlaneLattice
		{
			double cell;
			double delta;

			PlaneLattice(double w1, double w2)
				: cell(std::sqrt(w1 * w2)), delta(0.5 * std::sqrt(w1 + w2)) {}

			double count_upper(double r) const
			{
				return pi * (r + delta) * (r + delta) / cell;
			}
			double count_lower(double r) const
			{
				return r > delta ? pi * (r - delta) * (r - delta) / cell : 0.0;
			}
		};

		// Bound on sum f(|p|) over lattice points with |p| > q_cut, for f
		// positive and decreasing beyond q_cut: shells [t, t + h) hold at most
		// count_upper(t + h) - count_lower(t) points, each at most f(t).
		template <class F>
		double radial_tail_bound(const PlaneLattice& lat, F f, double q_cut, double h)
		{
			long double total = 0;
			for (double t = q_cut;; t += h)
			{
				const long double ft = f(t);
				const long double c = lat.count_upper(t + h) - lat.count_lower(t);
				total += c * ft;
				if (ft == 0 || c * ft < 1e-30L * total)
					break;
			}
			return static_cast<double>(total);
		}

		// Integral estimate of sum_{r > R} r^-n over the lattice and a rigorous
		// bound on the error of that estimate.
		inline Estimate power_tail(const PlaneLattice& lat, double n, double R)
		{
			const double main = 2 * pi * std::pow(R, 2 - n) / (lat.cell * (n - 2));
			const double d = lat.delta;
			const double bound = pi / lat.cell
				* ((2 * d * R + 2 * d * d) * std::pow(R, -n)
				   + 2 * d * n * std::pow(R, 1 - n) / (n - 1));
			return {main, bound};
		}

		// Both axes, then the open quadrant m, k >= 1 four times: Z^2 \ {0}.
		inline long double power_partial_sum(double x1, double x2, double n, double R)
		{
			const long double half = -static_cast<long double>(n) / 2;
			const bool quartic = n == 4;
			const long double R2 = static_cast<long double>(R) * R;
			Accumulator acc;
			const auto mmax = static_cast<std::int64_t>(std::floor(R / std::sqrt(x1)));
			const auto kmax = static_cast<std::int64_t>(std::floor(R / std::sqrt(x2)));
			for (std::int64_t m = 1; m <= mmax; ++m)
				acc += 2 * std::pow(static_cast<long double>(x1) * m * m, half);
			for (std::int64_t k = 1; k <= kmax; ++k)
				acc += 2 * std::pow(static_cast<long double>(x2) * k * k, half);
			for (std::int64_t m = 1; m <= mmax; ++m)
			{
				const long double a = static_cast<long double>(x1) * m * m;
				Accumulator row;
				for (std::int64_t k = 1; k <= kmax; ++k)
				{
					const long double r2 = a + static_cast<long double>(x2) * k * k;
					if (r2 > R2) break;
					row += quartic ? 1 / (r2 * r2) : std::pow(r2, half);
				}
				acc += 4 * row.value();
			}
			return acc.value();
		}

		// Remainder of sum_{n in Z} (n^2 + q^2)^-2 after its leading term
		// pi / (2 q^3). Positive and decreasing; R(q) e^{2 pi q} is also decreasing.
		inline long double quartic_row_remainder(long double q)
		{
			const long double e = std::exp(-2 * std::numbers::pi_v<long double> * q);
			const long double one_minus = -std::expm1(-2 * std::numbers::pi_v<long double> * q);
			const long double p = std::numbers::pi_v<long double>;
			return p * e / (q * q * q * one_minus) + 2 * p * p * e / (q * q * one_minus * one_minus);
		}

		// sum_{k >= 1} k K_1(2 pi k q), with a bound on the omitted terms.
		inline Estimate bessel_k1_row(double q)
		{
			Accumulator acc;
			double last = 0;
			int k = 1;
			for (;; ++k)
			{
				const double t = k * std::cyl_bessel_k(1.0, 2 * pi * k * q);
				acc += t;
				last = t;
				if (t <= 1e-19 * static_cast<double>(acc.value()) || t == 0)
					break;
			}
			// e^x K_1(x) is decreasing, so successive ratios are at most (k+1)/k e^{-2 pi q}.
			const double ratio = (k + 1.0) / k * std::exp(-2 * pi * q);
			return {static_cast<double>(acc.value()), last * ratio / (1 - ratio)};
		}
	}

	/// Partial sum of the Epstein lattice sum over all nonzero (m, k) with
	/// x1 m^2 + x2 k^2 <= radius^2. Terms are positive, so this is monotone in
	/// radius and bounded by the full sum.
	inline double epstein_partial_sum(const LatticeSumSpec& spec, double radius)
	{
		detail::validate(spec);
		return static_cast<double>(detail::power_partial_sum(spec.x1, spec.x2, spec.exponent, radius));
	}

	/// Z_2(x1, x2; n) = sum'_{(m,k)} (x1 m^2 + x2 k^2)^(-n/2) by shell summation.
	/// The shell radius is chosen so that the tail bound is below rel_tol of a
	/// lower bound on the sum; the integral estimate of the tail is added back.
	inline Estimate epstein_zeta_2(const LatticeSumSpec& spec)
	{
		detail::validate(spec);
		const double n = spec.exponent;
		const detail::PlaneLattice lat(spec.x1, spec.x2);
		const double lower = 2 * std::pow(spec.x1, -n / 2) + 2 * std::pow(spec.x2, -n / 2);
		const double target = spec.rel_tol * lower / 2;

		double R = 2 * std::sqrt(std::max(spec.x1, spec.x2));
		while (detail::power_tail(lat, n, R).error_bound > target)
			R *= 1.1;

		const double points = lat.count_upper(R);
		if (points > 4e9)
			throw std::domain_error("epstein_zeta_2: tolerance requires more than 4e9 lattice points");

		const long double partial = detail::power_partial_sum(spec.x1, spec.x2, n, R);
		const Estimate tail = detail::power_tail(lat, n, R);
		const double value = static_cast<double>(partial + tail.value);
		const double rounding = 4 * std::numeric_limits<double>::epsilon() * value;
		return {value, tail.error_bound + rounding};
	}

	/// Z_2(x1, x2; n) for n = 3 or 4 with the shorter lattice direction
	/// summed in closed form (Poisson / Chowla-Selberg). The remainder is
	/// exponentially convergent; the error bound covers the omitted terms.
	inline Estimate epstein_zeta_2_resummed(double x1, double x2, int exponent)
	{
		if (!(x1 > 0) || !(x2 > 0))
			throw std::domain_error("epstein_zeta_2_resummed: weights must be positive");
		if (exponent != 3 && exponent != 4)
			throw std::domain_error("epstein_zeta_2_resummed: only exponents 3 and 4 are supported");
		if (x1 > x2)
			std::swap(x1, x2);
		const double r = std::sqrt(x2 / x1);  // >= 1
		const double ratio = std::exp(-2 * pi * r);

		Accumulator acc;
		double bound = 0;
		if (exponent == 4)
		{
			acc += 2 * riemann_zeta(4) / (x1 * x1);
			acc += pi * riemann_zeta(3) / (std::sqrt(x1) * x2 * std::sqrt(x2));
			Accumulator rem;
			long double last = 0;
			for (int l = 1;; ++l)
			{
				last = detail::quartic_row_remainder(static_cast<long double>(l) * r);
				rem += last;
				if (last <= 1e-22L * rem.value() || last == 0)
					break;
			}
			const long double tail = last * ratio / (1 - ratio);
			acc += 2 * rem.value() / (static_cast<long double>(x1) * x1);
			bound = static_cast<double>(2 * tail / (static_cast<long double>(x1) * x1));
		}
		else
		{
			acc += 2 * riemann_zeta(3) / (x1 * std::sqrt(x1));
			acc += 4 * riemann_zeta(2) / (std::sqrt(x1) * x2);
			Accumulator rem;
			double inner_bounds = 0;
			double last_upper = 0;
			for (int l = 1;; ++l)
			{
				const double q = l * r;
				const Estimate row = detail::bessel_k1_row(q);
				const double term = row.value / q;
				rem += term;
				inner_bounds += row.error_bound / q;
				last_upper = std::cyl_bessel_k(1.0, 2 * pi * q) / (q * (1 - 2 * std::exp(-2 * pi * q)));
				if (term <= 1e-19 * static_cast<double>(rem.value()) || term == 0)
					break;
			}
			const double scale = 16 * pi / (x1 * std::sqrt(x1));
			acc += scale * rem.value();
			bound = scale * (inner_bounds + last_upper * ratio / (1 - ratio));
		}
		const double value = static_cast<double>(acc.value());
		return {value, bound + 4 * std::numeric_limits<double>::epsilon() * value};
	}

	/// Z_3(x1, x2, x3; 4) = sum' (x1 n^2 + x2 m^2 + x3 l^2)^-2, with the index
	/// of the smallest weight summed in closed form.
	inline Estimate epstein_zeta_3_quartic(double x1, double x2, double x3)
	{
		if (!(x1 > 0) || !(x2 > 0) || !(x3 > 0))
			throw std::domain_error("epstein_zeta_3_quartic: weights must be positive");
		std::array<double, 3> w{x1, x2, x3};
		std::sort(w.begin(), w.end());
		const double s = w[0];
		const double u = w[1] / s, v = w[2] / s;  // scaled lateral weights, >= 1

		const Estimate plane = epstein_zeta_2_resummed(w[1], w[2], 3);

		// sum over lateral (m, l) != 0 of R(sqrt(u m^2 + v l^2)), in rows of l
		const detail::PlaneLattice lat(u, v);
		auto remainder_sum = [&](double q_cut) {
			Accumulator acc;
			const auto lmax = static_cast<std::int64_t>(std::floor(q_cut / std::sqrt(v)));
			const auto mmax = static_cast<std::int64_t>(std::floor(q_cut / std::sqrt(u)));
			for (std::int64_t l = -lmax; l <= lmax; ++l)
				for (std::int64_t m = -mmax; m <= mmax; ++m)
				{
					if (m == 0 && l == 0) continue;
					const long double q2 = static_cast<long double>(u) * m * m + static_cast<long double>(v) * l * l;
					if (q2 > static_cast<long double>(q_cut) * q_cut) continue;
					acc += detail::quartic_row_remainder(std::sqrt(q2));
				}
			return acc.value();
		};
		// Shell bound for q > q_cut: each shell [t, t+h) holds at most
		// count_upper(t+h) - count_lower(t) points, each at most R(t).
		auto tail_bound = [&](double q_cut) {
			const double h = 0.25;
			long double total = 0;
			for (double t = q_cut;; t += h)
			{
				const long double f = detail::quartic_row_remainder(t);
				const long double c = lat.count_upper(t + h) - lat.count_lower(t);
				total += c * f;
				if (f == 0 || c * f < 1e-30L * total)
					break;
			}
			return total;
		};

		double q_cut = 3;
		const long double first = detail::quartic_row_remainder(1.0L);
		while (tail_bound(q_cut) > 1e-20L * first)
			q_cut += 1;

		const long double rem = remainder_sum(q_cut);
		const long double inv_s2 = 1.0L / (static_cast<long double>(s) * s);
		Accumulator acc;
		acc += 2 * riemann_zeta(4) * inv_s2;
		acc += pi / (2 * std::sqrt(s)) * static_cast<long double>(plane.value);
		acc += rem * inv_s2;
		const double value = static_cast<double>(acc.value());
		const double bound = pi / (2 * std::sqrt(s)) * plane.error_bound
			+ static_cast<double>(tail_bound(q_cut) * inv_s2)
			+ 4 * std::numeric_limits<double>::epsilon() * value;
		return {value, bound};
	}

	struct JConstants
	{
		double j_dirichlet;  // Z_2(1,1;4) - 2 pi zeta(3)
		double j_neumann;    // Z_2(1,1;4) + 2 pi zeta(3)
		double j_em;         // j_dirichlet + j_neumann = 2 Z_2(1,1;4)
	};

	/// Built once from the shell-summed Z_2(1,1;4); later calls are free.
	inline JConstants j_constants()
	{
		static const JConstants cached = [] {
			const double z2 = epstein_zeta_2({1, 1, 4, 1e-10}).value;
			const double jd = z2 - 2 * pi * riemann_zeta(3);
			const double jn = z2 + 2 * pi * riemann_zeta(3);
			return JConstants{jd, jn, jd + jn};
		}();
		return cached;
	}

	/// J_eta for a boundary sign eta = -1 (Dirichlet) or +1 (Neumann).
	inline double j_constant(int eta_sign)
	{
		if (eta_sign != 1 && eta_sign != -1)
			throw std::domain_error("j_constant: eta must be +1 or -1");
		const JConstants j = j_constants();
		return eta_sign < 0 ? j.j_dirichlet : j.j_neumann;
	}
}

#endif
