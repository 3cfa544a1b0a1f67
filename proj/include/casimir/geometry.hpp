#ifndef CASIMIR_GEOMETRY_HPP
#define CASIMIR_GEOMETRY_HPP

// Piston cross sections: sharp corners plus constant-curvature boundary arcs
// (straight sides are arcs of zero curvature). Any smooth boundary piece is
// represented as a chain of circular arcs; the curvature integral over a
// circular arc is exactly curvature * length.

#include <cmath>
#include <span>
#include <string>
#include <vector>

#include "core.hpp"

namespace casimir
{
	struct Corner
	{
		double interior_angle;  // radians, in (0, 2 pi), != pi
	};

	struct Arc
	{
		double length;
		double curvature;  // signed, positive where the boundary turns toward the interior
	};

	struct Point2
	{
		double x, y;
	};

	struct ChiValue
	{
		double chi;
		double corner_contribution;
		double curvature_contribution;
		bool reentrant;  // at least one corner with interior angle > pi
	};

	/// Tolerance on the total-turning closure check, as a fraction of 2 pi.
	inline constexpr double closure_tolerance = 1e-9;

	class CrossSection
	{
	public:
		CrossSection(std::vector<Corner> corners, std::vector<Arc> arcs, double area, double perimeter)
			: corners_(std::move(corners)), arcs_(std::move(arcs)), area_(area), perimeter_(perimeter)
		{
			validate();
		}

		const std::vector<Corner>& corners() const { return corners_; }
		const std::vector<Arc>& arcs() const { return arcs_; }
		double area() const { return area_; }
		double perimeter() const { return perimeter_; }

		/// Sum of exterior turning angles; 2 pi for a simple closed boundary.
		double total_turning() const
		{
			Accumulator acc;
			for (const auto& c : corners_)
				acc += pi - c.interior_angle;
			for (const auto& a : arcs_)
				acc += a.curvature * a.length;
			return static_cast<double>(acc.value());
		}

		bool has_reentrant_corner() const
		{
			for (const auto& c : corners_)
				if (c.interior_angle > pi) return true;
			return false;
		}

		CrossSection scaled(double lambda) const
		{
			require(lambda > 0, "scale factor lambda > 0");
			std::vector<Arc> arcs;
			arcs.reserve(arcs_.size());
			for (const auto& a : arcs_)
				arcs.push_back({a.length * lambda, a.curvature / lambda});
			return CrossSection(corners_, std::move(arcs), area_ * lambda * lambda, perimeter_ * lambda);
		}

	private:
		void validate() const
		{
			for (const auto& c : corners_)
			{
				if (!(c.interior_angle > 0))
					throw std::domain_error("invariant violated: interior angle alpha > 0 (a zero angle is a cusp)");
				require(c.interior_angle < 2 * pi, "interior angle alpha < 2 pi");
				require(std::fabs(c.interior_angle - pi) > 1e-12,
					"interior angle alpha != pi (a flat corner must be given as smooth boundary)");
			}
			for (const auto& a : arcs_)
			{
				require(a.length > 0, "arc length > 0");
				require(std::isfinite(a.curvature), "arc curvature is finite");
			}
			require(area_ > 0, "area A > 0");
			require(perimeter_ > 0, "perimeter P > 0");
			const double turning = total_turning();
			if (std::fabs(turning - 2 * pi) > closure_tolerance * 2 * pi)
				throw std::domain_error(
					"invariant violated: closed boundary (total turning sum(pi - alpha) + sum(integral kappa ds) = 2 pi, got "
					+ std::to_string(turning) + ")");
		}

		std::vector<Corner> corners_;
		std::vector<Arc> arcs_;
		double area_;
		double perimeter_;
	};

	/// chi = sum_i (pi/alpha_i - alpha_i/pi) / 24 + sum_j (1 / 12 pi) integral kappa ds
	inline ChiValue chi(const CrossSection& cs)
	{
		Accumulator corner, curvature;
		for (const auto& c : cs.corners())
			corner += (pi / c.interior_angle - c.interior_angle / pi) / 24;
		for (const auto& a : cs.arcs())
			curvature += a.curvature * a.length / (12 * pi);
		const double cc = static_cast<double>(corner.value());
		const double kc = static_cast<double>(curvature.value());
		return {cc + kc, cc, kc, cs.has_reentrant_corner()};
	}

	namespace shapes
	{
		inline CrossSection rectangle(double width, double height)
		{
			require(width > 0 && height > 0, "rectangle sides > 0");
			return CrossSection(
				std::vector<Corner>(4, Corner{pi / 2}),
				{{width, 0}, {height, 0}, {width, 0}, {height, 0}},
				width * height, 2 * (width + height));
		}

		inline CrossSection square(double side) { return rectangle(side, side); }

		inline CrossSection circle(double radius)
		{
			require(radius > 0, "circle radius > 0");
			return CrossSection({}, {{2 * pi * radius, 1 / radius}}, pi * radius * radius, 2 * pi * radius);
		}

		/// Two semicircles of the given radius joined by straight sides.
		inline CrossSection stadium(double radius, double straight)
		{
			require(radius > 0 && straight > 0, "stadium radius > 0 and straight length > 0");
			return CrossSection({},
				{{pi * radius, 1 / radius}, {straight, 0}, {pi * radius, 1 / radius}, {straight, 0}},
				pi * radius * radius + 2 * radius * straight, 2 * pi * radius + 2 * straight);
		}

		inline CrossSection regular_polygon(int sides, double side_length)
		{
			require(sides >= 3, "polygon has at least 3 sides");
			require(side_length > 0, "polygon side length > 0");
			const double alpha = pi * (sides - 2) / sides;
			const double area = sides * side_length * side_length / (4 * std::tan(pi / sides));
			return CrossSection(std::vector<Corner>(sides, Corner{alpha}),
				std::vector<Arc>(sides, Arc{side_length, 0}), area, sides * side_length);
		}

		/// Simple polygon from its vertices (either orientation). Area by the
		/// shoelace formula, interior angles from the signed turning at each vertex.
		inline CrossSection polygon(std::span<const Point2> v)
		{
			const std::size_t n = v.size();
			require(n >= 3, "polygon has at least 3 vertices");
			Accumulator twice_area;
			for (std::size_t i = 0; i < n; ++i)
			{
				const auto& p = v[i];
				const auto& q = v[(i + 1) % n];
				twice_area += static_cast<long double>(p.x) * q.y - static_cast<long double>(q.x) * p.y;
			}
			const double signed_area = static_cast<double>(twice_area.value()) / 2;
			require(signed_area != 0, "polygon area A > 0");
			const double orientation = signed_area > 0 ? 1 : -1;

			std::vector<Corner> corners;
			std::vector<Arc> sides;
			double perimeter = 0;
			for (std::size_t i = 0; i < n; ++i)
			{
				const auto& prev = v[(i + n - 1) % n];
				const auto& cur = v[i];
				const auto& next = v[(i + 1) % n];
				const double ex = cur.x - prev.x, ey = cur.y - prev.y;
				const double fx = next.x - cur.x, fy = next.y - cur.y;
				const double turn = orientation * std::atan2(ex * fy - ey * fx, ex * fx + ey * fy);
				corners.push_back({pi - turn});
				const double len = std::hypot(fx, fy);
				require(len > 0, "polygon vertices are distinct");
				sides.push_back({len, 0});
				perimeter += len;
			}
			return CrossSection(std::move(corners), std::move(sides), std::fabs(signed_area), perimeter);
		}
	}
}

#endif
