#include <cmath>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include <casimir/geometry.hpp>
#include <casimir/geometry_io.hpp>

using namespace casimir;

namespace
{
	std::string shape_file(const std::string& name)
	{
		return std::string(CASIMIR_SHAPES_DIR) + "/" + name;
	}

	// chi from the definition, one corner at a time
	double corner_term(double alpha) { return (pi / alpha - alpha / pi) / 24; }
}

TEST(Chi, RectangleIsOneQuarter)
{
	EXPECT_EQ(chi(shapes::square(1)).chi, 0.25);
	EXPECT_NEAR(chi(shapes::rectangle(3, 0.2)).chi, 0.25, 1e-15);
}

TEST(Chi, SmoothShapesAreOneSixth)
{
	EXPECT_NEAR(chi(shapes::circle(1)).chi, 1.0 / 6, 1e-12);
	EXPECT_NEAR(chi(shapes::circle(37.5)).chi, 1.0 / 6, 1e-12);
	EXPECT_NEAR(chi(shapes::stadium(0.5, 2)).chi, 1.0 / 6, 1e-12);
}

TEST(Chi, EquilateralTriangleIsOneThird)
{
	EXPECT_NEAR(chi(shapes::regular_polygon(3, 1)).chi, 1.0 / 3, 1e-12);
	EXPECT_NEAR(3 * corner_term(pi / 3), 1.0 / 3, 1e-15);
}

TEST(Chi, RegularPolygonsApproachSmoothValue)
{
	double prev = chi(shapes::regular_polygon(3, 1)).chi;
	for (int n = 4; n <= 200; n += 7)
	{
		const double c = chi(shapes::regular_polygon(n, 1)).chi;
		EXPECT_LT(c, prev);
		EXPECT_GT(c, 1.0 / 6);
		prev = c;
	}
	// expanding the corner sum in 1/n: chi = 1/6 + 1/(6n) + O(1/n^2)
	for (int n : {500, 2000, 10000})
		EXPECT_NEAR(chi(shapes::regular_polygon(n, 1)).chi, 1.0 / 6 + 1.0 / (6 * n), 1.0 / (n * n));
}

TEST(Chi, ScaleInvariant)
{
	const CrossSection s = shapes::stadium(0.7, 1.3);
	for (double l : {0.01, 0.5, 3.0, 1e4})
		EXPECT_NEAR(chi(s.scaled(l)).chi, chi(s).chi, 1e-14);
}

TEST(Chi, BreakdownAddsUp)
{
	const std::vector<Point2> v{{0, 0}, {2, 0}, {2, 1}, {1, 1}, {1, 2}, {0, 2}};
	const ChiValue x = chi(shapes::polygon(v));
	EXPECT_NEAR(x.chi, x.corner_contribution + x.curvature_contribution, 1e-15);
	EXPECT_NEAR(x.chi, 5 * corner_term(pi / 2) + corner_term(1.5 * pi), 1e-15);
	EXPECT_TRUE(x.reentrant);
	EXPECT_FALSE(chi(shapes::square(1)).reentrant);
}

TEST(Polygon, AreaPerimeterAndOrientation)
{
	const std::vector<Point2> ccw{{0, 0}, {3, 0}, {3, 2}, {0, 2}};
	const std::vector<Point2> cw{{0, 0}, {0, 2}, {3, 2}, {3, 0}};
	for (const auto& v : {ccw, cw})
	{
		const CrossSection p = shapes::polygon(v);
		EXPECT_NEAR(p.area(), 6, 1e-15);
		EXPECT_NEAR(p.perimeter(), 10, 1e-15);
		EXPECT_NEAR(chi(p).chi, 0.25, 1e-15);
	}
}

TEST(CrossSectionValidation, RejectsCusp)
{
	try
	{
		CrossSection({{0.0}, {pi}}, {{1, 0}}, 1, 1);
		FAIL() << "expected a domain error";
	}
	catch (const std::domain_error& e)
	{
		EXPECT_NE(std::string(e.what()).find("cusp"), std::string::npos);
	}
}

TEST(CrossSectionValidation, RejectsOpenBoundary)
{
	// three right angles turn only 3 pi / 2
	try
	{
		CrossSection(std::vector<Corner>(3, Corner{pi / 2}), {{1, 0}}, 1, 4);
		FAIL() << "expected a domain error";
	}
	catch (const std::domain_error& e)
	{
		EXPECT_NE(std::string(e.what()).find("2 pi"), std::string::npos);
	}
}

TEST(CrossSectionValidation, RejectsBadData)
{
	EXPECT_THROW(CrossSection({{pi / 2}}, {}, 1, 1), std::domain_error);
	EXPECT_THROW(CrossSection({}, {{2 * pi, 1}}, 0, 2 * pi), std::domain_error);
	EXPECT_THROW(CrossSection({}, {{2 * pi, 1}}, pi, -1), std::domain_error);
	EXPECT_THROW(CrossSection({}, {{-1, 1}}, pi, 2 * pi), std::domain_error);
	EXPECT_THROW(CrossSection({{pi}, {pi}}, {{2 * pi, 1}}, pi, 2 * pi), std::domain_error);
	EXPECT_THROW(shapes::square(0), std::domain_error);
	EXPECT_THROW(shapes::regular_polygon(2, 1), std::domain_error);
	EXPECT_THROW(shapes::circle(1).scaled(0), std::domain_error);
}

TEST(ShapeFiles, ParseAndEvaluate)
{
	EXPECT_EQ(chi(load_cross_section(shape_file("square.json"))).chi, 0.25);
	EXPECT_NEAR(chi(load_cross_section(shape_file("circle.json"))).chi, 1.0 / 6, 1e-9);
	EXPECT_NEAR(chi(load_cross_section(shape_file("stadium.json"))).chi, 1.0 / 6, 1e-9);
	EXPECT_NEAR(chi(load_cross_section(shape_file("triangle.json"))).chi, 1.0 / 3, 1e-12);
	const CrossSection l = load_cross_section(shape_file("l_shape.json"));
	EXPECT_TRUE(chi(l).reentrant);
	EXPECT_NEAR(l.area(), 3, 1e-15);
}

TEST(ShapeFiles, CircleDefaultsPerimeterToArcLength)
{
	const CrossSection c = parse_cross_section(R"({"arcs": [{"length": 6.283185307179586, "curvature": 1}], "area": 3.14159})");
	EXPECT_NEAR(c.perimeter(), 2 * pi, 1e-15);
}

TEST(ShapeFiles, MalformedDocuments)
{
	EXPECT_THROW(parse_cross_section("{"), std::invalid_argument);
	EXPECT_THROW(parse_cross_section("[1, 2]"), std::invalid_argument);
	EXPECT_THROW(parse_cross_section(R"({"arcs": [{"length": 1}]})"), std::invalid_argument);
	EXPECT_THROW(parse_cross_section(R"({"vertices": [[0, 0], [1]]})"), std::invalid_argument);
	EXPECT_THROW(parse_cross_section(R"({"corners": [{"angle": 1}], "area": 1})"), std::invalid_argument);
	EXPECT_THROW(load_cross_section(shape_file("does_not_exist.json")), std::invalid_argument);
	// closure violations surface as domain errors from the cross-section itself
	EXPECT_THROW(parse_cross_section(R"({"arcs": [{"length": 1, "curvature": 1}], "area": 1})"), std::domain_error);
}
