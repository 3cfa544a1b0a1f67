#ifndef CASIMIR_CORE_HPP
#define CASIMIR_CORE_HPP

// Shared vocabulary: field types, value-with-bound pairs and a compensated
// accumulator. All lengths are in natural units (hbar = c = 1).

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>

namespace casimir
{
	inline constexpr double pi = std::numbers::pi;

	enum class Field
	{
		scalar_dirichlet,
		scalar_neumann,
		em
	};

	/// Boundary-condition sign: -1 for Dirichlet, +1 for Neumann.
	/// Only meaningful for the scalar fields.
	inline int eta(Field f)
	{
		switch (f)
		{
			case Field::scalar_dirichlet: return -1;
			case Field::scalar_neumann: return +1;
			case Field::em: break;
		}
		throw std::invalid_argument("eta is undefined for the electromagnetic field");
	}

	inline Field scalar_field(int eta_sign)
	{
		if (eta_sign == -1) return Field::scalar_dirichlet;
		if (eta_sign == +1) return Field::scalar_neumann;
		throw std::invalid_argument("eta must be -1 or +1");
	}

	inline std::string_view to_string(Field f)
	{
		switch (f)
		{
			case Field::scalar_dirichlet: return "scalar-d";
			case Field::scalar_neumann: return "scalar-n";
			case Field::em: return "em";
		}
		return "?";
	}

	inline Field parse_field(std::string_view s)
	{
		if (s == "scalar-d" || s == "dirichlet") return Field::scalar_dirichlet;
		if (s == "scalar-n" || s == "neumann") return Field::scalar_neumann;
		if (s == "em") return Field::em;
		throw std::invalid_argument("unknown field type '" + std::string(s) + "' (expected scalar-d, scalar-n or em)");
	}

	/// A computed number together with an absolute bound on its error.
	struct Estimate
	{
		double value = 0;
		double error_bound = 0;
	};

	/// Neumaier-compensated sum in extended precision. Summation order is
	/// whatever order add() is called in, so callers fix the order.
	class Accumulator
	{
	public:
		void add(long double x)
		{
			long double t = sum_ + x;
			if (std::fabs(sum_) >= std::fabs(x))
				comp_ += (sum_ - t) + x;
			else
				comp_ += (x - t) + sum_;
			sum_ = t;
		}
		Accumulator& operator+=(long double x) { add(x); return *this; }
		long double value() const { return sum_ + comp_; }

	private:
		long double sum_ = 0;
		long double comp_ = 0;
	};

	inline void require(bool cond, const std::string& invariant)
	{
		if (!cond)
			throw std::domain_error("invariant violated: " + invariant);
	}
}

#endif
