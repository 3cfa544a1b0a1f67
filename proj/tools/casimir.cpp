// casimir: command-line front end for the piston library.
//
//   casimir force    --field em --a 1 --b 10
//   casimir sweep    --ratio-min 0.01 --ratio-max 2 --points 200 --log
//   casimir chi      --shape shapes/circle.json
//   casimir diagnose decomposition --dims 1 1 1 --lambda 40

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <casimir/forces.hpp>
#include <casimir/geometry_io.hpp>
#include <casimir/optical_paths.hpp>
#include <casimir/spectrum.hpp>

using namespace casimir;

namespace
{
	std::string num(double x)
	{
		char buf[64];
		std::snprintf(buf, sizeof buf, "%.15g", x);
		return buf;
	}

	std::string short_num(double x)
	{
		char buf[64];
		std::snprintf(buf, sizeof buf, "%.3g", x);
		return buf;
	}

	void kv(std::ostream& out, const std::string& key, const std::string& value)
	{
		out << key << " = " << value << '\n';
	}

	void kv_bound(std::ostream& out, const std::string& key, double value, double bound)
	{
		out << key << " = " << num(value) << " +/- " << short_num(bound) << '\n';
	}

	void kv_exact(std::ostream& out, const std::string& key, double value)
	{
		out << key << " = " << num(value) << " EXACT\n";
	}

	void print_force(std::ostream& out, const ForceResult& r)
	{
		kv(out, "method", r.method);
		kv_bound(out, "total", r.total, r.total_bound);
		kv_exact(out, "term_a4", r.term_a4);
		kv_exact(out, "term_a3", r.term_a3);
		kv_exact(out, "term_a2", r.term_a2);
		if (r.term_const)
			// J constants are computed to 1e-10 relative
			kv_bound(out, "term_const", *r.term_const, 1e-10 * std::fabs(*r.term_const));
		else
			kv(out, "term_const", "unknown");
		if (std::isinf(r.remainder_bound))
			kv(out, "exp_remainder", "unknown");
		else
			out << "exp_remainder = " << num(r.exp_remainder) << " +/- " << short_num(r.remainder_bound)
				<< (r.remainder_rigorous ? "" : " (order estimate)") << '\n';
		kv_exact(out, "parallel_plate", r.parallel_plate);
		kv_bound(out, "normalized", r.normalized, r.total_bound / std::fabs(r.parallel_plate));
		for (const auto& n : r.notes)
			kv(out, "note", n);
	}

	struct ForceOptions
	{
		std::string field = "em";
		double a = 0;
		std::optional<double> b;
		std::string shape;
		std::optional<double> tolerance;
	};

	int cmd_force(const ForceOptions& o)
	{
		const Field field = parse_field(o.field);
		PistonConfig cfg;
		cfg.a = o.a;
		cfg.field_type = field;
		if (!o.shape.empty())
			cfg.cross_section = load_cross_section(o.shape);
		else if (o.b)
			cfg.cross_section = *o.b;
		else
			throw std::invalid_argument("one of --b or --shape is required");
		cfg.validate();

		std::ostream& out = std::cout;
		kv(out, "field", std::string(to_string(field)));
		kv_exact(out, "a", cfg.a);
		kv_exact(out, "area", cfg.area());
		kv_exact(out, "perimeter", cfg.perimeter());

		ForceResult r;
		if (!o.shape.empty())
			r = force_arbitrary_section(cfg);
		else if (field == Field::em)
			r = force_em_exact(cfg);
		else
			r = force_scalar_asymptotic(cfg, eta(field));
		print_force(out, r);
		if (field != Field::em)
			kv_bound(out, "total_per_area", r.total / cfg.area(), r.total_bound / cfg.area());

		// exact scalar value from the transverse-mode series when it is cheap
		if (field != Field::em && o.shape.empty() && *o.b / cfg.a <= 100)
		{
			const ForceResult x = force_scalar_exact(cfg.a, *o.b, *o.b, eta(field));
			kv_bound(out, "exact_total", x.total, x.total_bound);
			kv_bound(out, "exact_normalized", x.normalized, x.total_bound / std::fabs(x.parallel_plate));
		}

		if (o.tolerance && !(r.total_bound <= *o.tolerance * std::fabs(r.total)))
		{
			std::cerr << "error bound " << short_num(r.total_bound / std::fabs(r.total))
					  << " (relative) exceeds --tolerance " << short_num(*o.tolerance) << '\n';
			return 3;
		}
		return 0;
	}

	struct SweepOptions
	{
		double ratio_min = 0.01;
		double ratio_max = 2;
		int points = 200;
		bool log = false;
		std::vector<std::string> curves{"exact", "first_correction", "second_correction", "box"};
		std::string out;
	};

	int cmd_sweep(const SweepOptions& o)
	{
		require(o.ratio_min > 0 && o.ratio_min < o.ratio_max, "0 < ratio_min < ratio_max");
		require(o.points >= 2, "points >= 2");
		const std::vector<std::string> known{"exact", "first_correction", "second_correction", "box"};
		std::vector<bool> want(4, false);
		for (const auto& c : o.curves)
		{
			const auto it = std::find(known.begin(), known.end(), c);
			if (it == known.end())
				throw std::invalid_argument("unknown curve '" + c + "'");
			want[it - known.begin()] = true;
		}
		const char* columns[] = {"F_exact_norm", "F_corr1_norm", "F_corr2_norm", "F_box_norm"};

		std::ofstream file;
		if (!o.out.empty())
		{
			file.open(o.out);
			if (!file)
				throw std::invalid_argument("cannot write '" + o.out + "'");
		}
		std::ostream& out = o.out.empty() ? std::cout : file;

		out << "a_over_b";
		for (int k = 0; k < 4; ++k)
			if (want[k]) out << ',' << columns[k];
		out << '\n';

		double worst_exact = 0, worst_box = 0;
		for (int i = 0; i < o.points; ++i)
		{
			const double t = static_cast<double>(i) / (o.points - 1);
			double ratio = o.log ? o.ratio_min * std::pow(o.ratio_max / o.ratio_min, t)
								 : o.ratio_min + (o.ratio_max - o.ratio_min) * t;
			if (i == o.points - 1) ratio = o.ratio_max;

			const ForceResult r = force_em_exact(PistonConfig::square(ratio, 1.0));
			const double par = r.parallel_plate;
			double values[4] = {r.normalized, (r.term_a4 + r.term_a2) / par,
				(r.term_a4 + r.term_a2 + *r.term_const) / par, 0};
			worst_exact = std::max(worst_exact, r.total_bound / std::fabs(par));
			if (want[3])
			{
				const ForceResult box = force_box(PistonConfig::square(ratio, 1.0));
				values[3] = box.normalized;
				worst_box = std::max(worst_box, box.total_bound / std::fabs(par));
			}
			out << num(ratio);
			for (int k = 0; k < 4; ++k)
				if (want[k]) out << ',' << num(values[k]);
			out << '\n';
		}
		std::cerr << "max error bound: F_exact_norm " << short_num(worst_exact)
				  << ", F_box_norm " << short_num(worst_box) << "; correction curves EXACT\n";
		return 0;
	}

	int cmd_chi(const std::string& path)
	{
		const CrossSection cs = load_cross_section(path);
		const ChiValue x = chi(cs);
		std::ostream& out = std::cout;
		const double A = cs.area(), P = cs.perimeter();
		// all closed forms of the section data
		kv_exact(out, "chi", x.chi);
		kv_exact(out, "corner_contribution", x.corner_contribution);
		kv_exact(out, "curvature_contribution", x.curvature_contribution);
		kv(out, "reentrant", x.reentrant ? "yes" : "no");
		kv_exact(out, "area", A);
		kv_exact(out, "perimeter", P);
		kv_exact(out, "scalar_coeff_a4", -3 * riemann_zeta(4) * A / (16 * pi * pi));
		kv_exact(out, "scalar_d_coeff_a3", riemann_zeta(3) * P / (32 * pi));
		kv_exact(out, "scalar_n_coeff_a3", -riemann_zeta(3) * P / (32 * pi));
		kv_exact(out, "scalar_coeff_a2", -riemann_zeta(2) * x.chi / (4 * pi));
		kv_exact(out, "em_coeff_a4", -3 * riemann_zeta(4) * A / (8 * pi * pi));
		kv_exact(out, "em_coeff_a2", riemann_zeta(2) * (1 - 2 * x.chi) / (4 * pi));
		kv(out, "coeff_const", "unknown");
		return 0;
	}

	struct Report
	{
		bool all = true;
		void check(const std::string& name, bool ok, const std::string& detail)
		{
			std::cout << (ok ? "PASS " : "FAIL ") << name << ": " << detail << '\n';
			all = all && ok;
		}
		int exit_code() const { return all ? 0 : 1; }
	};

	int diagnose_decomposition(const BoxDims& dims, double lambda)
	{
		dims.validate();
		require(lambda > 0, "lambda > 0");
		const DecompositionCheck d = check_decomposition(dims, lambda);
		kv_bound(std::cout, "em", d.em, 1e-10 * std::fabs(d.em));
		kv_bound(std::cout, "dirichlet", d.dirichlet, 1e-10 * std::fabs(d.dirichlet));
		kv_bound(std::cout, "neumann", d.neumann, 1e-10 * std::fabs(d.neumann));
		kv_exact(std::cout, "towers", d.towers);
		Report rep;
		rep.check("decomposition", d.relative_residual < 1e-12,
			"relative residual " + short_num(d.relative_residual) + " (limit 1e-12)");
		return rep.exit_code();
	}

	int diagnose_weyl(const BoxDims& dims)
	{
		dims.validate();
		const std::vector<double> grid = default_weyl_grid(dims);
		const WeylFit d = fit_weyl_coefficients(dims, Field::scalar_dirichlet, grid, 2);
		const WeylFit n = fit_weyl_coefficients(dims, Field::scalar_neumann, grid, 2);
		const WeylFit e = fit_weyl_coefficients(dims, Field::em, grid, 2);
		for (const auto& [name, f] : {std::pair{"dirichlet", &d}, std::pair{"neumann", &n}, std::pair{"em", &e}})
		{
			const std::string p = name;
			kv_bound(std::cout, p + ".volume_coeff", f->volume_coeff, f->residual);
			kv_bound(std::cout, p + ".surface_coeff", f->surface_coeff, surface_uncertainty(*f));
			kv_bound(std::cout, p + ".edge_coeff", f->edge_coeff, f->residual);
			kv_bound(std::cout, p + ".constant", f->constant, constant_uncertainty(*f));
			kv(std::cout, p + ".fit_residual", short_num(f->residual));
		}
		Report rep;
		rep.check("surface sign", d.surface_coeff < 0 && n.surface_coeff > 0,
			"dirichlet " + short_num(d.surface_coeff) + ", neumann " + short_num(n.surface_coeff));
		const double mismatch = std::fabs(std::fabs(d.surface_coeff) - std::fabs(n.surface_coeff))
			/ std::fabs(n.surface_coeff);
		rep.check("surface magnitude", mismatch < 0.02, "relative mismatch " + short_num(mismatch) + " (limit 0.02)");
		const double em_limit = surface_uncertainty(e);
		rep.check("em surface cancels", std::fabs(e.surface_coeff) <= em_limit,
			"|c3| " + short_num(std::fabs(e.surface_coeff)) + " (fit uncertainty " + short_num(em_limit) + ")");
		return rep.exit_code();
	}

	int diagnose_paths(double a, double b)
	{
		require(a > 0, "a > 0");
		require(b > 0, "b > 0");
		Report rep;
		for (int eta_sign : {-1, 1})
		{
			const std::string p = eta_sign < 0 ? "dirichlet" : "neumann";
			const Estimate path = piston_force_from_paths(a, b, b, eta_sign);
			const ForceResult asym = force_scalar_asymptotic(PistonConfig::square(a, b, scalar_field(eta_sign)), eta_sign);
			kv_bound(std::cout, p + ".path_force", path.value, path.error_bound);
			kv_bound(std::cout, p + ".asymptotic_force", asym.total, asym.remainder_bound);
			const double diff = path.value - asym.total;
			const double allowed = path.error_bound + asym.remainder_bound;
			rep.check(p + " paths vs asymptotic", std::fabs(diff) <= allowed,
				"residual " + short_num(diff) + " (allowed " + short_num(allowed) + ")");
			if (b / a <= 100)
			{
				const ForceResult exact = force_scalar_exact(a, b, b, eta_sign);
				const double d2 = path.value - exact.total;
				const double allowed2 = path.error_bound + exact.total_bound;
				rep.check(p + " paths vs mode series", std::fabs(d2) <= allowed2,
					"residual " + short_num(d2) + " (allowed " + short_num(allowed2) + ")");
			}
		}
		return rep.exit_code();
	}
}

int main(int argc, char** argv)
{
	CLI::App app{"Casimir forces on a rectangular piston"};
	app.require_subcommand(1);

	ForceOptions fo;
	auto* force = app.add_subcommand("force", "force on the piston at one separation");
	force->add_option("--field", fo.field, "scalar-d, scalar-n or em")->capture_default_str();
	force->add_option("--a", fo.a, "piston to base distance")->required();
	force->add_option("--b", fo.b, "side of the square cross section");
	force->add_option("--shape", fo.shape, "cross-section file (JSON)");
	force->add_option("--tolerance", fo.tolerance, "fail if the relative error bound is larger");

	SweepOptions so;
	auto* sweep = app.add_subcommand("sweep", "normalized EM force curves against a/b (CSV)");
	sweep->add_option("--ratio-min", so.ratio_min, "smallest a/b")->capture_default_str();
	sweep->add_option("--ratio-max", so.ratio_max, "largest a/b")->capture_default_str();
	sweep->add_option("--points", so.points, "number of rows (>= 2)")->capture_default_str();
	sweep->add_flag("--log", so.log, "logarithmic spacing");
	sweep->add_option("--curves", so.curves, "exact,first_correction,second_correction,box")->delimiter(',');
	sweep->add_option("--out", so.out, "output file (default stdout)");

	std::string shape;
	auto* chi_cmd = app.add_subcommand("chi", "corner and curvature functional of a cross section");
	chi_cmd->add_option("--shape", shape, "cross-section file (JSON)")->required();

	auto* diag = app.add_subcommand("diagnose", "consistency checks; exit 0 iff all pass");
	diag->require_subcommand(1);
	std::vector<double> dims{1, 1, 1};
	double lambda = 40;
	auto* decomp = diag->add_subcommand("decomposition", "EM = D + N - 1-D towers for one box");
	decomp->add_option("--dims", dims)->expected(3)->capture_default_str();
	decomp->add_option("--lambda", lambda, "regulator cutoff")->capture_default_str();
	auto* weyl = diag->add_subcommand("weyl-fit", "divergent-term structure of the regulated energy");
	weyl->add_option("--dims", dims)->expected(3)->capture_default_str();
	double pa = 0.1, pb = 1;
	auto* paths = diag->add_subcommand("validate-paths", "optical-path force against the expansion");
	paths->add_option("--a", pa, "piston to base distance")->capture_default_str();
	paths->add_option("--b", pb, "side of the square cross section")->capture_default_str();

	CLI11_PARSE(app, argc, argv);

	try
	{
		if (*force) return cmd_force(fo);
		if (*sweep) return cmd_sweep(so);
		if (*chi_cmd) return cmd_chi(shape);
		if (*decomp) return diagnose_decomposition({dims[0], dims[1], dims[2]}, lambda);
		if (*weyl) return diagnose_weyl({dims[0], dims[1], dims[2]});
		if (*paths) return diagnose_paths(pa, pb);
	}
	catch (const std::exception& e)
	{
		std::cerr << "error: " << e.what() << '\n';
		return 2;
	}
	return 0;
}
