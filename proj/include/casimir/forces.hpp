#ifndef CASIMIR_FORCES_HPP
#define CASIMIR_FORCES_HPP

// Casimir force on a piston of cross section A at distance a from the base,
// with the far end at infinity. Negative force = attraction toward the base.

#include <cmath>
#include <limits>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core.hpp"
#include "geometry.hpp"
#include "special_functions.hpp"

namespace casimir
{
	struct PistonConfig
	{
		double a = 1;
		std::variant<double, CrossSection> cross_section = 1.0;  // double: square of that side
		Field field_type = Field::em;
		double h = std::numeric_limits<double>::infinity();

		static PistonConfig square(double a, double b, Field f = Field::em)
		{
			return {a, b, f, std::numeric_limits<double>::infinity()};
		}

		void validate() const
		{
			require(std::isfinite(a) && a > 0, "a > 0");
			require(std::isinf(h) && h > 0, "h = infinity (finite height is not supported)");
			if (const double* b = std::get_if<double>(&cross_section))
				require(std::isfinite(*b) && *b > 0, "b > 0");
		}

		double area() const
		{
			if (const double* b = std::get_if<double>(&cross_section))
				return *b * *b;
			return std::get<CrossSection>(cross_section).area();
		}

		double perimeter() const
		{
			if (const double* b = std::get_if<double>(&cross_section))
				return 4 * *b;
			return std::get<CrossSection>(cross_section).perimeter();
		}

		/// Side of the square section; throws unless the section is a square.
		double square_side() const
		{
			if (const double* b = std::get_if<double>(&cross_section))
				return *b;
			const auto& cs = std::get<CrossSection>(cross_section);
			bool ok = cs.corners().size() == 4 && cs.arcs().size() == 4;
			if (ok)
			{
				const double s = cs.arcs()[0].length;
				for (const auto& c : cs.corners())
					ok = ok && std::fabs(c.interior_angle - pi / 2) < 1e-12;
				for (const auto& arc : cs.arcs())
					ok = ok && arc.curvature == 0 && std::fabs(arc.length - s) <= 1e-12 * s;
				if (ok) return s;
			}
			throw std::domain_error("invariant violated: square cross section (b = c)");
		}

		ChiValue chi_value() const
		{
			if (std::holds_alternative<double>(cross_section))
				return {0.25, 4 * (2.0 - 0.5) / 24, 0, false};
			return chi(std::get<CrossSection>(cross_section));
		}
	};

	struct ForceResult
	{
		double total = 0;
		double term_a4 = 0;
		double term_a3 = 0;
		double term_a2 = 0;
		std::optional<double> term_const;  // empty when the O(1) term is unknown
		double exp_remainder = 0;
		double remainder_bound = 0;   // bound on the remainder (an order estimate when !remainder_rigorous)
		bool remainder_rigorous = true;
		double total_bound = 0;       // absolute error bound on total
		double parallel_plate = 0;    // F_par used for normalized
		double normalized = 0;
		std::string method;
		std::vector<std::string> notes;
	};

	/// Parallel-plate force for area A: EM -3 zeta(4) A / (8 pi^2 a^4), half that for a scalar.
	inline double parallel_plate_force(double a, double area, Field f)
	{
		const double em = -3 * riemann_zeta(4) * area / (8 * pi * pi * a * a * a * a);
		return f == Field::em ? em : em / 2;
	}

	namespace detail
	{
		constexpr double eps = std::numeric_limits<double>::epsilon();

		// coth(f) / (sinh(f)^2 f) = 4 e (1 + e) / ((1 - e)^3 f), e = exp(-2 f)
		inline double lattice_term(double f)
		{
			const double e = std::exp(-2 * f);
			const double one_minus = -std::expm1(-2 * f);
			return 4 * e * (1 + e) / (one_minus * one_minus * one_minus * f);
		}

		// sum' over Z^2 of lattice_term(pi |p| ratio), ratio = b/a, summed in
		// annuli k <= |p| < k + 1 until three consecutive annuli each add less
		// than 1e-14 of the running sum; the rest is bounded radially.
		inline Estimate em_lattice_sum(double ratio)
		{
			Accumulator acc;
			int quiet = 0;
			long k = 0;
			for (; quiet < 3; ++k)
			{
				Accumulator shell;
				const long long lo = k * k, hi = (k + 1) * (k + 1);
				for (long m = 0; m <= k + 1; ++m)
				{
					const long long m2 = static_cast<long long>(m) * m;
					if (m2 >= hi) break;
					for (long n = 0; m2 + static_cast<long long>(n) * n < hi; ++n)
					{
						const long long s = m2 + static_cast<long long>(n) * n;
						if (s < lo || s == 0) continue;
						const int mult = (m == 0 || n == 0) ? 2 : 4;
						shell += mult * static_cast<long double>(lattice_term(pi * std::sqrt(static_cast<double>(s)) * ratio));
					}
				}
				const long double sv = shell.value();
				acc += sv;
				quiet = (sv <= 1e-14L * acc.value()) ? quiet + 1 : 0;
			}
			const PlaneLattice unit(1, 1);
			const double tail = radial_tail_bound(unit,
				[&](double q) { return lattice_term(pi * q * ratio); }, static_cast<double>(k), 0.5);
			const double value = static_cast<double>(acc.value());
			return {value, tail + 8 * eps * value};
		}

		enum class Transverse { dirichlet, neumann, em };

		// sum_{n >= 1} K0(n z) + K1(n z) / (n z). With h(x) = K0(x) + K1(x)/x,
		// e^x h(x) is decreasing, so successive terms shrink by at least e^-z.
		inline Estimate bessel_row(double z)
		{
			const double r = std::exp(-z);
			long double sum = 0;
			for (int n = 1;; ++n)
			{
				const double x = n * z;
				const double t = std::cyl_bessel_k(0.0, x) + std::cyl_bessel_k(1.0, x) / x;
				sum += t;
				const double tail = t * r / (1 - r);
				if (t == 0 || tail <= 1e-17 * static_cast<double>(sum))
					return {static_cast<double>(sum), tail};
			}
		}

		// Exact piston force from the transverse modes mu of a b x c section:
		//   F = -(1/pi) sum_mu g mu^2 sum_{n>=1} [K0(2 n mu a) + K1(2 n mu a)/(2 n mu a)].
		// Every term is negative. A massless transverse mode gives -zeta(2)/(4 pi a^2).
		inline Estimate transverse_mode_force(double a, double b, double c, Transverse set)
		{
			const double kb = pi / b, kc = pi / c;
			const double mu_min = set == Transverse::dirichlet ? std::hypot(kb, kc) : std::min(kb, kc);
			// past mu = 1/a each per-mode bound is decreasing; e^-40 below the first mode
			const double mu_cut = std::max(mu_min + 20 / a, 2 / a);

			Accumulator acc;
			double row_bound = 0;
			const int first = set == Transverse::dirichlet ? 1 : 0;
			const long m_max = static_cast<long>(mu_cut / kb) + 1;
			for (long m = first; m <= m_max; ++m)
			{
				const double pm = kb * m;
				if (pm > mu_cut) break;
				const long l_max = static_cast<long>(std::sqrt(std::max(0.0, mu_cut * mu_cut - pm * pm)) / kc) + 1;
				for (long l = first; l <= l_max; ++l)
				{
					if (m == 0 && l == 0)
					{
						if (set == Transverse::neumann)
							acc += -riemann_zeta(2) / (4 * pi * a * a);
						continue;
					}
					const double mu = std::hypot(pm, kc * l);
					if (mu > mu_cut) break;
					const int g = (set == Transverse::em && m > 0 && l > 0) ? 2 : 1;
					const Estimate row = bessel_row(2 * mu * a);
					acc += -g * static_cast<long double>(mu) * mu * row.value / pi;
					row_bound += g * mu * mu * row.error_bound / pi;
				}
			}
			// Remaining modes, up to two states each, over the full plane lattice.
			const PlaneLattice lat(kb * kb, kc * kc);
			const double tail = radial_tail_bound(lat,
				[&](double mu) {
					const double z = 2 * mu * a;
					return 2 * mu * mu * (std::cyl_bessel_k(0.0, z) + std::cyl_bessel_k(1.0, z) / z) / (pi * (1 - std::exp(-z)));
				},
				mu_cut, 0.5 * std::min(kb, kc));
			const double value = static_cast<double>(acc.value());
			return {value, tail + row_bound + 1e-15 * std::fabs(value)};
		}

		inline void finish(ForceResult& r, double a, double area, Field f)
		{
			r.parallel_plate = parallel_plate_force(a, area, f);
			r.normalized = r.total / r.parallel_plate;
		}
	}

	/// Exact EM force, square section of side b. The lattice series is used
	/// for a/b <= 1; beyond that the transverse-mode series, whose terms are
	/// all negative, converges faster and fixes the sign of small forces.
	inline ForceResult force_em_exact(const PistonConfig& cfg)
	{
		cfg.validate();
		const double a = cfg.a, b = cfg.square_side();
		const double A = b * b;
		ForceResult r;
		r.term_a4 = -3 * riemann_zeta(4) * A / (8 * pi * pi * a * a * a * a);
		r.term_a3 = 0;
		r.term_a2 = riemann_zeta(2) / (8 * pi * a * a);
		r.term_const = -j_constants().j_em / (32 * pi * pi * A);
		const double known = r.term_a4 + r.term_a2 + *r.term_const;
		const double scale = std::fabs(r.term_a4) + std::fabs(r.term_a2) + std::fabs(*r.term_const);

		if (a <= b)
		{
			const Estimate lattice = detail::em_lattice_sum(b / a);
			const double pre = pi * pi * A / (16 * a * a * a * a);
			r.exp_remainder = pre * lattice.value;
			r.remainder_bound = pre * lattice.error_bound;
			r.total = known + r.exp_remainder;
			// J_em carries its own 1e-10 relative tolerance
			r.total_bound = r.remainder_bound + 8 * detail::eps * (scale + std::fabs(r.exp_remainder))
				+ 1e-10 * std::fabs(*r.term_const);
			r.method = "lattice";
		}
		else
		{
			const Estimate modes = detail::transverse_mode_force(a, b, b, detail::Transverse::em);
			r.total = modes.value;
			r.total_bound = modes.error_bound;
			r.exp_remainder = r.total - known;
			r.remainder_bound = r.total_bound + 8 * detail::eps * scale + 1e-10 * std::fabs(*r.term_const);
			r.method = "transverse-modes";
		}
		detail::finish(r, a, A, Field::em);
		return r;
	}

	/// Asymptotic scalar force for a square section; the exponential remainder
	/// is only known to order b exp(-2 pi b / a) / a^3.
	inline ForceResult force_scalar_asymptotic(const PistonConfig& cfg, int eta_sign)
	{
		cfg.validate();
		require(eta_sign == 1 || eta_sign == -1, "eta = +1 or -1");
		const double a = cfg.a, b = cfg.square_side();
		const double A = b * b, P = 4 * b;
		ForceResult r;
		r.term_a4 = -3 * riemann_zeta(4) * A / (16 * pi * pi * a * a * a * a);
		r.term_a3 = -eta_sign * riemann_zeta(3) * P / (32 * pi * a * a * a);
		r.term_a2 = -riemann_zeta(2) / (16 * pi * a * a);
		r.term_const = -j_constant(eta_sign) / (32 * pi * pi * A);
		r.exp_remainder = 0;
		r.remainder_bound = b * std::exp(-2 * pi * b / a) / (a * a * a);
		r.remainder_rigorous = false;
		r.total = r.term_a4 + r.term_a3 + r.term_a2 + *r.term_const;
		r.total_bound = r.remainder_bound + 1e-10 * std::fabs(*r.term_const)
			+ 8 * detail::eps * (std::fabs(r.term_a4) + std::fabs(r.term_a3) + std::fabs(r.term_a2));
		r.method = "asymptotic";
		if (a / b > 0.7)
			r.notes.push_back("remainder estimate is not reliable for a/b > 0.7");
		detail::finish(r, a, A, scalar_field(eta_sign));
		return r;
	}

	/// Exact scalar force for a b x c rectangular section from the transverse
	/// mode series. Not an expansion: the terms fields are left at zero.
	inline ForceResult force_scalar_exact(double a, double b, double c, int eta_sign)
	{
		require(std::isfinite(a) && a > 0, "a > 0");
		require(b > 0 && c > 0, "b > 0 and c > 0");
		require(eta_sign == 1 || eta_sign == -1, "eta = +1 or -1");
		const Estimate f = detail::transverse_mode_force(a, b, c,
			eta_sign < 0 ? detail::Transverse::dirichlet : detail::Transverse::neumann);
		ForceResult r;
		r.total = f.value;
		r.total_bound = f.error_bound;
		r.remainder_bound = f.error_bound;
		r.method = "transverse-modes";
		detail::finish(r, a, b * c, scalar_field(eta_sign));
		return r;
	}

	/// Leading terms for any cross section through chi; the O(1) term is unknown.
	inline ForceResult force_arbitrary_section(const PistonConfig& cfg)
	{
		cfg.validate();
		const double a = cfg.a, A = cfg.area(), P = cfg.perimeter();
		const ChiValue x = cfg.chi_value();
		ForceResult r;
		if (cfg.field_type == Field::em)
		{
			r.term_a4 = -3 * riemann_zeta(4) * A / (8 * pi * pi * a * a * a * a);
			r.term_a3 = 0;
			r.term_a2 = riemann_zeta(2) * (1 - 2 * x.chi) / (4 * pi * a * a);
		}
		else
		{
			r.term_a4 = -3 * riemann_zeta(4) * A / (16 * pi * pi * a * a * a * a);
			r.term_a3 = -eta(cfg.field_type) * riemann_zeta(3) * P / (32 * pi * a * a * a);
			r.term_a2 = -riemann_zeta(2) * x.chi / (4 * pi * a * a);
		}
		r.term_const.reset();
		r.exp_remainder = 0;
		r.remainder_bound = std::numeric_limits<double>::infinity();
		r.remainder_rigorous = false;
		r.total = r.term_a4 + r.term_a3 + r.term_a2;
		r.total_bound = r.remainder_bound;
		r.method = "asymptotic";
		r.notes.push_back("O(1) term unknown for a general cross section");
		if (x.reentrant)
			r.notes.push_back("section has a reentrant corner");
		detail::finish(r, a, A, cfg.field_type);
		return r;
	}

	/// EM force of an isolated box: the exact force without the -J_em/(32 pi^2 A)
	/// term that region II contributes. Kept for comparison; it turns repulsive.
	inline ForceResult force_box(const PistonConfig& cfg)
	{
		ForceResult r = force_em_exact(cfg);
		const double removed = *r.term_const;
		r.term_const = 0.0;
		r.total -= removed;
		r.total_bound += 8 * detail::eps * std::fabs(removed);
		r.method += ", region II term removed";
		r.notes.push_back("isolated-box force; not a physical piston force");
		detail::finish(r, cfg.a, cfg.area(), Field::em);
		return r;
	}

	/// Root of force_box in a/b, bracketed in [lo, hi], by bisection.
	inline double force_box_root(double lo = 0.5, double hi = 1.0, double tol = 1e-12)
	{
		auto f = [](double ratio) { return force_box(PistonConfig::square(ratio, 1.0)).total; };
		double flo = f(lo);
		const double fhi = f(hi);
		require(flo * fhi < 0, "force_box changes sign inside the bracket");
		while (hi - lo > tol)
		{
			const double mid = 0.5 * (lo + hi);
			const double fm = f(mid);
			if ((fm < 0) == (flo < 0))
			{
				lo = mid;
				flo = fm;
			}
			else
				hi = mid;
		}
		return 0.5 * (lo + hi);
	}
}

#endif
