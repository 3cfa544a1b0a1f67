#ifndef CASIMIR_GEOMETRY_IO_HPP
#define CASIMIR_GEOMETRY_IO_HPP

// JSON cross-section documents:
//
//   {"corners": [{"interior_angle": <rad>}, ...],
//    "arcs":    [{"length": <L>, "curvature": <kappa>}, ...],
//    "area": <A>, "perimeter": <P>}
//
// or a polygon given by its vertices, in which case area and perimeter are
// derived (shoelace):
//
//   {"vertices": [[x, y], ...]}
//
// "perimeter" may be omitted when the arcs cover the whole boundary; it then
// defaults to the total arc length.

#include <fstream>
#include <sstream>
#include <string>
#include <string_view>

#include <json.hpp>

#include "geometry.hpp"

namespace casimir
{
	inline CrossSection parse_cross_section(std::string_view document)
	{
		using nlohmann::json;
		json doc;
		try
		{
			doc = json::parse(document);
		}
		catch (const json::parse_error& e)
		{
			throw std::invalid_argument(std::string("malformed cross-section document: ") + e.what());
		}
		if (!doc.is_object())
			throw std::invalid_argument("malformed cross-section document: top level must be an object");

		try
		{
			if (doc.contains("vertices"))
			{
				std::vector<Point2> pts;
				for (const auto& p : doc.at("vertices"))
				{
					if (!p.is_array() || p.size() != 2)
						throw std::invalid_argument("malformed cross-section document: each vertex must be [x, y]");
					pts.push_back({p[0].get<double>(), p[1].get<double>()});
				}
				return shapes::polygon(pts);
			}

			std::vector<Corner> corners;
			if (doc.contains("corners"))
				for (const auto& c : doc.at("corners"))
					corners.push_back({c.at("interior_angle").get<double>()});

			std::vector<Arc> arcs;
			double arc_length = 0;
			if (doc.contains("arcs"))
				for (const auto& a : doc.at("arcs"))
				{
					arcs.push_back({a.at("length").get<double>(), a.value("curvature", 0.0)});
					arc_length += arcs.back().length;
				}

			if (!doc.contains("area"))
				throw std::invalid_argument("malformed cross-section document: missing \"area\"");
			const double area = doc.at("area").get<double>();
			const double perimeter = doc.contains("perimeter") ? doc.at("perimeter").get<double>() : arc_length;
			return CrossSection(std::move(corners), std::move(arcs), area, perimeter);
		}
		catch (const json::exception& e)
		{
			throw std::invalid_argument(std::string("malformed cross-section document: ") + e.what());
		}
	}

	inline CrossSection load_cross_section(const std::string& path)
	{
		std::ifstream in(path);
		if (!in)
			throw std::invalid_argument("cannot open shape file '" + path + "'");
		std::ostringstream ss;
		ss << in.rdbuf();
		return parse_cross_section(ss.str());
	}
}

#endif
