#ifndef CASIMIR_SPECTRUM_HPP
#define CASIMIR_SPECTRUM_HPP

// Exact cavity spectra of a rectangular box and exponentially regulated
// vacuum-energy sums
//
//     E(Lambda) = 1/2 sum_modes deg * omega * exp(-omega / Lambda),
//     omega     = pi sqrt((n/a)^2 + (m/b)^2 + (l/c)^2).
//
// Dirichlet modes need n, m, l >= 1; Neumann modes n, m, l >= 0 (not all
// zero). Electromagnetic modes are twofold degenerate when all indices are
// nonzero, single when exactly one vanishes, and absent otherwise.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "core.hpp"

namespace casimir
{
	struct BoxDims
	{
		double a, b, c;

		void validate() const
		{
			require(a > 0 && b > 0 && c > 0, "box dimensions a, b, c > 0");
		}
		double volume() const { return a * b * c; }
		double surface() const { return 2 * (a * b + b * c + a * c); }
		double edge_length() const { return 4 * (a + b + c); }
		double min_dim() const { return std::min({a, b, c}); }
		double max_dim() const { return std::max({a, b, c}); }
	};

	/// Degeneracy of the index triple (n, m, l) for the given field; 0 if absent.
	inline int mode_degeneracy(Field field, int n, int m, int l)
	{
		const int zeros = (n == 0) + (m == 0) + (l == 0);
		switch (field)
		{
			case Field::scalar_dirichlet: return zeros == 0 ? 1 : 0;
			case Field::scalar_neumann: return zeros < 3 ? 1 : 0;
			case Field::em: return zeros == 0 ? 2 : (zeros == 1 ? 1 : 0);
		}
		return 0;
	}

	inline double mode_frequency(const BoxDims& d, int n, int m, int l)
	{
		const double x = n / d.a, y = m / d.b, z = l / d.c;
		return pi * std::sqrt(x * x + y * y + z * z);
	}

	struct Mode
	{
		double frequency;
		int degeneracy;
		int n, m, l;
	};

	/// Largest mode list enumerate_modes will materialize.
	inline constexpr std::size_t max_listed_modes = 50'000'000;

	/// All modes with frequency <= omega_max, sorted by frequency then index.
	inline std::vector<Mode> enumerate_modes(const BoxDims& dims, Field field, double omega_max)
	{
		dims.validate();
		require(omega_max > 0, "omega_max > 0");
		const int nmax = static_cast<int>(std::floor(omega_max * dims.a / pi));
		const int mmax = static_cast<int>(std::floor(omega_max * dims.b / pi));
		const int lmax = static_cast<int>(std::floor(omega_max * dims.c / pi));
		const double estimate = (nmax + 1.0) * (mmax + 1.0) * (lmax + 1.0);
		if (estimate > 8.0 * max_listed_modes)
			throw std::length_error("enumerate_modes: mode list would exceed the bound of "
				+ std::to_string(max_listed_modes) + " modes");

		std::vector<Mode> modes;
		for (int n = 0; n <= nmax; ++n)
			for (int m = 0; m <= mmax; ++m)
				for (int l = 0; l <= lmax; ++l)
				{
					const int g = mode_degeneracy(field, n, m, l);
					if (g == 0) continue;
					const double w = mode_frequency(dims, n, m, l);
					if (w > omega_max) break;
					modes.push_back({w, g, n, m, l});
					if (modes.size() > max_listed_modes)
						throw std::length_error("enumerate_modes: mode list exceeds the bound of "
							+ std::to_string(max_listed_modes) + " modes");
				}
		std::sort(modes.begin(), modes.end(), [](const Mode& x, const Mode& y) {
			if (x.frequency != y.frequency) return x.frequency < y.frequency;
			return std::tie(x.n, x.m, x.l) < std::tie(y.n, y.m, y.l);
		});
		return modes;
	}

	/// Number of modes (with degeneracy) at or below omega.
	inline long long count_modes(const BoxDims& dims, Field field, double omega)
	{
		dims.validate();
		const int nmax = static_cast<int>(std::floor(omega * dims.a / pi));
		const int mmax = static_cast<int>(std::floor(omega * dims.b / pi));
		const double s = omega / pi;
		long long count = 0;
		for (int n = 0; n <= nmax; ++n)
			for (int m = 0; m <= mmax; ++m)
			{
				const double rest = s * s - (n / dims.a) * (n / dims.a) - (m / dims.b) * (m / dims.b);
				if (rest < 0) break;
				const int lmax = static_cast<int>(std::floor(std::sqrt(rest) * dims.c));
				for (int l = 0; l <= lmax; ++l)
					count += mode_degeneracy(field, n, m, l);
			}
		return count;
	}

	struct RegulatedSpectrum
	{
		BoxDims dims;
		Field field;
		double cutoff;            // Lambda
		double regulated_energy;  // 1/2 sum deg omega exp(-omega/Lambda)
		double error_bound;       // truncation + rounding
		long long mode_count_used;
	};

	/// Upper bound on the number of index triples reachable by regulated sums.
	inline constexpr double max_regulated_modes = 4e9;

	namespace detail
	{
		// Rigorous bound on 1/2 sum_{omega > W} deg omega e^{-omega/Lambda}: shells of
		// width Lambda, each holding at most 2 prod(omega d_i / pi + 1) modes.
		inline double spectral_tail_bound(const BoxDims& d, double W, double lambda)
		{
			long double total = 0;
			for (int k = 0; k < 10000; ++k)
			{
				const double lo = W + k * lambda, hi = lo + lambda;
				const long double count = 2.0L * (hi * d.a / pi + 1) * (hi * d.b / pi + 1) * (hi * d.c / pi + 1);
				const long double t = count * hi * std::exp(-static_cast<long double>(lo) / lambda) / 2;
				total += t;
				if (t < 1e-14L * total) break;
			}
			return static_cast<double>(total);
		}

		// One pass over the modes below W accumulating every cutoff of the grid, for
		// each requested field. Frequencies and exponentials are shared between
		// fields; each field keeps its own degeneracies and accumulators.
		// Row sums are reduced in index order, so results are reproducible.
		inline std::vector<std::vector<long double>> regulated_sums(const BoxDims& d, std::span<const Field> fields,
			std::span<const double> lambdas, double W, std::vector<long long>& used)
		{
			const std::size_t G = lambdas.size(), F = fields.size();
			std::vector<double> inv(G), cut(G);
			for (std::size_t j = 0; j < G; ++j)
			{
				inv[j] = 1 / lambdas[j];
				cut[j] = 48 * lambdas[j];  // e^-48 ~ 1.4e-21: below any requested tolerance
			}
			std::vector<Accumulator> acc(F * G);
			std::vector<double> row(F * G), term(G);
			std::vector<int> g0(F), g1(F);
			used.assign(F, 0);
			const double s = W / pi;
			const int nmax = static_cast<int>(std::floor(s * d.a));
			for (int n = 0; n <= nmax; ++n)
			{
				const double xn = n / d.a;
				const int mmax = static_cast<int>(std::floor(std::sqrt(std::max(0.0, s * s - xn * xn)) * d.b));
				for (int m = 0; m <= mmax; ++m)
				{
					const double ym = m / d.b;
					const double base = xn * xn + ym * ym;
					const double rest = s * s - base;
					if (rest < 0) break;
					const int lmax = static_cast<int>(std::floor(std::sqrt(rest) * d.c));
					std::fill(row.begin(), row.end(), 0.0);
					bool any0 = false, any1 = false;
					for (std::size_t f = 0; f < F; ++f)
					{
						g0[f] = mode_degeneracy(fields[f], n, m, 0);
						g1[f] = mode_degeneracy(fields[f], n, m, 1);
						any0 = any0 || g0[f] > 0;
						any1 = any1 || g1[f] > 0;
					}
					auto add = [&](double w, const std::vector<int>& g) {
						for (std::size_t j = 0; j < G; ++j)
							term[j] = w < cut[j] ? w * std::exp(-w * inv[j]) : 0.0;
						for (std::size_t f = 0; f < F; ++f)
							if (g[f] > 0)
								for (std::size_t j = 0; j < G; ++j)
									row[f * G + j] += g[f] * term[j];
					};
					if (any0)
					{
						add(pi * std::sqrt(base), g0);
						for (std::size_t f = 0; f < F; ++f) used[f] += g0[f];
					}
					if (any1)
					{
						for (int l = 1; l <= lmax; ++l)
						{
							const double zl = l / d.c;
							add(pi * std::sqrt(base + zl * zl), g1);
						}
						for (std::size_t f = 0; f < F; ++f) used[f] += static_cast<long long>(g1[f]) * lmax;
					}
					for (std::size_t k = 0; k < F * G; ++k)
						acc[k] += row[k];
				}
			}
			std::vector<std::vector<long double>> out(F, std::vector<long double>(G));
			for (std::size_t f = 0; f < F; ++f)
				for (std::size_t j = 0; j < G; ++j)
					out[f][j] = acc[f * G + j].value() / 2;
			return out;
		}
	}

	/// Regulated energies of several fields for several cutoffs from a single pass
	/// over the spectrum; result[f][j] belongs to fields[f] and lambdas[j].
	inline std::vector<std::vector<RegulatedSpectrum>> regulated_energies(const BoxDims& dims,
		std::span<const Field> fields, std::span<const double> lambdas, double rel_tol = 1e-10)
	{
		dims.validate();
		require(!fields.empty(), "at least one field");
		require(!lambdas.empty(), "at least one cutoff");
		double lmax = 0;
		for (double l : lambdas)
		{
			require(l > 0, "cutoff Lambda > 0");
			lmax = std::max(lmax, l);
		}

		const double lowest = pi * std::sqrt(1 / (dims.max_dim() * dims.max_dim()));
		// Start from the smallest W whose tail bound meets the tolerance against
		// half the leading Weyl estimate 3 V Lambda^4 / (2 pi^2); verified below.
		double W = lowest + 30 * lmax;
		for (double l : lambdas)
		{
			const double weyl = 3 * dims.volume() * std::pow(l, 4) / (2 * pi * pi);
			while (detail::spectral_tail_bound(dims, W, l) > rel_tol * weyl / 2)
				W += lmax;
		}
		for (;;)
		{
			const double reach = (W * dims.a / pi + 1) * (W * dims.b / pi + 1) * (W * dims.c / pi + 1);
			if (reach > max_regulated_modes)
				throw std::length_error("regulated_energy: Lambda * box size too large, more than "
					+ std::to_string(static_cast<long long>(max_regulated_modes)) + " index triples required");
			std::vector<long long> used;
			const auto sums = detail::regulated_sums(dims, fields, lambdas, W, used);

			bool ok = true;
			std::vector<std::vector<RegulatedSpectrum>> out(fields.size());
			for (std::size_t f = 0; f < fields.size(); ++f)
				for (std::size_t j = 0; j < lambdas.size(); ++j)
				{
					const double e = static_cast<double>(sums[f][j]);
					const double tail = detail::spectral_tail_bound(dims, W, lambdas[j]);
					// Modes beyond 48 Lambda are dropped inside the pass; their
					// contribution is covered by the same shell bound.
					const double skipped = 48 * lambdas[j] < W ? detail::spectral_tail_bound(dims, 48 * lambdas[j], lambdas[j]) : 0.0;
					const double bound = tail + skipped + 1e-15 * std::fabs(e);
					if (e > 0 && bound > rel_tol * e)
						ok = false;
					out[f].push_back({dims, fields[f], lambdas[j], e, bound, used[f]});
				}
			if (ok)
				return out;
			W += 8 * lmax;
		}
	}

	/// Regulated energies for several cutoffs from a single pass over the spectrum.
	inline std::vector<RegulatedSpectrum> regulated_energies(const BoxDims& dims, Field field,
		std::span<const double> lambdas, double rel_tol = 1e-10)
	{
		const Field one[1] = {field};
		return regulated_energies(dims, one, lambdas, rel_tol).front();
	}

	inline RegulatedSpectrum regulated_energy(const BoxDims& dims, Field field, double lambda)
	{
		const double grid[1] = {lambda};
		return regulated_energies(dims, field, grid).front();
	}

	/// Regulated energy of the 1-D tower omega = k pi / d, k >= 1, in closed form:
	/// 1/2 (pi/d) q / (1-q)^2 with q = exp(-pi / (d Lambda)).
	inline double tower_energy(double d, double lambda)
	{
		require(d > 0, "tower length d > 0");
		require(lambda > 0, "cutoff Lambda > 0");
		const double x = pi / (d * lambda);
		const double s = std::sinh(x / 2);
		return pi / (8 * d * s * s);
	}

	struct DecompositionCheck
	{
		double em;
		double dirichlet;
		double neumann;
		double towers;    // sum over the three edge directions
		double residual;  // em - (dirichlet + neumann - towers)
		double relative_residual;
	};

	/// E_C(Lambda) against E_D + E_N - sum_i E_1(d_i). The three mode sums use their
	/// own degeneracy rules and accumulators; the towers use the closed form.
	inline DecompositionCheck check_decomposition(const BoxDims& dims, double lambda)
	{
		const Field fields[3] = {Field::em, Field::scalar_dirichlet, Field::scalar_neumann};
		const double grid[1] = {lambda};
		const auto r = regulated_energies(dims, fields, grid);
		const double em = r[0][0].regulated_energy;
		const double dir = r[1][0].regulated_energy;
		const double neu = r[2][0].regulated_energy;
		const double towers = tower_energy(dims.a, lambda) + tower_energy(dims.b, lambda) + tower_energy(dims.c, lambda);
		const double residual = em - (dir + neu - towers);
		return {em, dir, neu, towers, residual, std::fabs(residual) / std::fabs(em)};
	}

	struct WeylFit
	{
		double volume_coeff;   // Lambda^4
		double surface_coeff;  // Lambda^3
		double edge_coeff;     // Lambda^2
		double linear_coeff;   // Lambda^1
		double constant;       // Lambda^0: the cutoff-independent energy
		std::vector<double> inverse_coeffs;  // Lambda^-2, Lambda^-4, ... when requested
		double residual;       // rms misfit
		double condition;      // of the scaled design matrix
		// one-sigma standard errors of the Lambda^3 and Lambda^0 coefficients
		double surface_stderr;
		double constant_stderr;
		// shift of the same coefficients when one more inverse power is fitted (NaN if not possible)
		double surface_systematic;
		double constant_systematic;
		// surface_coeff / S and edge_coeff / L, convenient for comparing geometries
		double surface_per_area;
		double edge_per_length;
	};

	/// Twelve cutoffs log-spaced over Lambda * min_dim in [8, 32]; with two
	/// inverse powers this resolves the finite part to ~1e-7 for unit boxes.
	inline std::vector<double> default_weyl_grid(const BoxDims& dims)
	{
		std::vector<double> grid;
		for (int i = 0; i < 12; ++i)
			grid.push_back(8 * std::pow(4.0, i / 11.0) / dims.min_dim());
		return grid;
	}

	namespace detail
	{
		struct WeylSolve
		{
			std::vector<double> coef;    // unscaled, Lambda^4 ... Lambda^0, Lambda^-2, ...
			std::vector<double> stderr_;
			double rms;
			double condition;
		};

		inline WeylSolve solve_weyl(std::span<const double> grid, const std::vector<RegulatedSpectrum>& energies,
			int inverse_powers)
		{
			using Mat = Eigen::Matrix<long double, Eigen::Dynamic, Eigen::Dynamic>;
			using Vec = Eigen::Matrix<long double, Eigen::Dynamic, 1>;
			const std::size_t N = grid.size();
			const std::size_t P = 5 + static_cast<std::size_t>(inverse_powers);
			const long double scale = *std::max_element(grid.begin(), grid.end());
			std::vector<int> power(P);
			for (int k = 0; k < 5; ++k) power[k] = 4 - k;
			for (int k = 0; k < inverse_powers; ++k) power[5 + k] = -2 * (k + 1);

			Mat A(N, P);
			Vec y(N);
			for (std::size_t i = 0; i < N; ++i)
			{
				const long double x = grid[i] / scale;
				for (std::size_t k = 0; k < P; ++k)
					A(i, k) = std::pow(x, static_cast<long double>(power[k]));
				y(i) = energies[i].regulated_energy;
			}
			// Column equilibration before the SVD.
			Vec colscale(P);
			for (std::size_t k = 0; k < P; ++k)
			{
				colscale(k) = A.col(k).norm();
				A.col(k) /= colscale(k);
			}
			Eigen::JacobiSVD<Mat> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
			const auto& sv = svd.singularValues();
			const double condition = static_cast<double>(sv(0) / sv(sv.size() - 1));
			if (!(condition < 1e13))
				throw std::domain_error("fit_weyl_coefficients: ill-conditioned fit (condition number "
					+ std::to_string(condition) + ")");
			const Vec coef = svd.solve(y);
			const long double sse = (A * coef - y).squaredNorm();
			// Covariance V diag(1/s^2) V^T scaled by the residual variance.
			const long double sigma2 = N > P ? sse / static_cast<long double>(N - P) : 0;

			WeylSolve out;
			out.rms = static_cast<double>(std::sqrt(sse / N));
			out.condition = condition;
			for (std::size_t k = 0; k < P; ++k)
			{
				long double v = 0;
				for (Eigen::Index i = 0; i < sv.size(); ++i)
					v += svd.matrixV()(k, i) * svd.matrixV()(k, i) / (sv(i) * sv(i));
				const long double unscale = colscale(k) * std::pow(scale, static_cast<long double>(power[k]));
				out.coef.push_back(static_cast<double>(coef(k) / unscale));
				out.stderr_.push_back(static_cast<double>(std::sqrt(sigma2 * v) / unscale));
			}
			return out;
		}
	}

	/// Least-squares fit of E(Lambda) to c4 L^4 + c3 L^3 + c2 L^2 + c1 L + c0
	/// (+ optional even inverse powers) over the supplied grid. The residuals
	/// are mostly model truncation, not noise, so the fit is repeated with one
	/// more inverse power when the grid allows and the coefficient shifts are
	/// reported as a systematic uncertainty.
	inline WeylFit fit_weyl_coefficients(const BoxDims& dims, Field field,
		std::span<const double> lambda_grid, int inverse_powers = 0)
	{
		dims.validate();
		require(inverse_powers >= 0, "inverse_powers >= 0");
		const std::size_t P = 5 + static_cast<std::size_t>(inverse_powers);
		require(lambda_grid.size() >= 8 && lambda_grid.size() >= P + 2, "Lambda grid has at least 8 points and more points than parameters");
		const auto [lo, hi] = std::minmax_element(lambda_grid.begin(), lambda_grid.end());
		require(*hi >= 4 * *lo, "Lambda grid spans at least a factor of 4");

		const auto energies = regulated_energies(dims, field, lambda_grid, 1e-14);
		const detail::WeylSolve s = detail::solve_weyl(lambda_grid, energies, inverse_powers);

		WeylFit fit{};
		fit.volume_coeff = s.coef[0];
		fit.surface_coeff = s.coef[1];
		fit.edge_coeff = s.coef[2];
		fit.linear_coeff = s.coef[3];
		fit.constant = s.coef[4];
		fit.inverse_coeffs.assign(s.coef.begin() + 5, s.coef.end());
		fit.surface_stderr = s.stderr_[1];
		fit.constant_stderr = s.stderr_[4];
		fit.residual = s.rms;
		fit.condition = s.condition;
		fit.surface_per_area = fit.surface_coeff / dims.surface();
		fit.edge_per_length = fit.edge_coeff / dims.edge_length();
		if (lambda_grid.size() >= P + 3)
		{
			try
			{
				const detail::WeylSolve t = detail::solve_weyl(lambda_grid, energies, inverse_powers + 1);
				fit.surface_systematic = std::fabs(t.coef[1] - s.coef[1]);
				fit.constant_systematic = std::fabs(t.coef[4] - s.coef[4]);
			}
			catch (const std::domain_error&)
			{
				fit.surface_systematic = fit.constant_systematic = std::numeric_limits<double>::quiet_NaN();
			}
		}
		else
			fit.surface_systematic = fit.constant_systematic = std::numeric_limits<double>::quiet_NaN();
		return fit;
	}

	/// Combined uncertainty: three standard errors plus the model-extension shift.
	inline double surface_uncertainty(const WeylFit& f)
	{
		return 3 * f.surface_stderr + (std::isnan(f.surface_systematic) ? 0 : f.surface_systematic);
	}

	inline double constant_uncertainty(const WeylFit& f)
	{
		return 3 * f.constant_stderr + (std::isnan(f.constant_systematic) ? 0 : f.constant_systematic);
	}
}

#endif
