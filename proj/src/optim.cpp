// optim.cpp — medium-to-ROM forward map and Gauss-Newton refinement of the
// Fourier-parametrized medium against data-side ROM coefficients.

#include "lossyrom/optim.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>
#include <utility>

#include "lossyrom/forward.hpp"
#include "lossyrom/grid.hpp"
#include "lossyrom/linalg.hpp"
#include "lossyrom/log.hpp"
#include "lossyrom/ratfit.hpp"

namespace lossyrom {

namespace {

double squared_norm(const std::vector<double>& v) {
    double s = 0.0;
    for (double e : v) s += e * e;
    return s;
}

// ============================================================================
// Fourier parameter packing
// ============================================================================

// The search space keeps J = floor(n/2) harmonics per field: cosine
// coefficients j = 0..J and sine coefficients j = 1..J for both the
// impedance and the loss, 2 * (2J + 1) parameters in total.  Layout:
// [zeta_cos | zeta_sin | loss_cos | loss_sin].
std::vector<double> resize_block(const std::vector<double>& v, std::size_t want,
                                 const char* what) {
    if (v.size() > want)
        throw std::invalid_argument(
            std::string("gauss_newton: initial medium has more ") + what +
            " harmonics than the search space allows (" + std::to_string(want) +
            " coefficients)");
    std::vector<double> out(want, 0.0);
    std::copy(v.begin(), v.end(), out.begin());
    return out;
}

std::vector<double> pack_medium(const FourierMedium& m, std::size_t harmonics) {
    std::vector<double> x;
    x.reserve(2 * (2 * harmonics + 1));
    auto append = [&x](const std::vector<double>& block) {
        x.insert(x.end(), block.begin(), block.end());
    };
    append(resize_block(m.zeta_cos, harmonics + 1, "impedance cosine"));
    append(resize_block(m.zeta_sin, harmonics, "impedance sine"));
    append(resize_block(m.loss_cos, harmonics + 1, "loss cosine"));
    append(resize_block(m.loss_sin, harmonics, "loss sine"));
    return x;
}

FourierMedium unpack_medium(const std::vector<double>& x, double t_max,
                            std::size_t harmonics) {
    FourierMedium m;
    m.t_max = t_max;
    auto it = x.begin();
    auto take = [&it](std::size_t count) {
        std::vector<double> block(it, it + long(count));
        it += long(count);
        return block;
    };
    m.zeta_cos = take(harmonics + 1);
    m.zeta_sin = take(harmonics);
    m.loss_cos = take(harmonics + 1);
    m.loss_sin = take(harmonics);
    return m;
}

// ============================================================================
// Shared evaluation state
// ============================================================================

struct GnWorkspace {
    std::size_t n = 0;
    std::size_t harmonics = 0;
    double t_max = 1.0;
    GnSettings settings;
    StaggeredGrid grid;
    const RomCoefficients* data = nullptr;
    ImpedanceSamples data_imp;

    GnWorkspace(const RomCoefficients& data_rom, double t_max_, std::size_t n_,
                const GnSettings& settings_)
        : n(n_), harmonics(n_ / 2), t_max(t_max_), settings(settings_),
          data(&data_rom) {
        if (n == 0)
            throw std::invalid_argument(
                "gauss_newton: ROM order must be positive");
        if (data_rom.gammas.size() != n || data_rom.gamma_hats.size() != n ||
            data_rom.r_primary.size() != n || data_rom.r_dual.size() != n)
            throw std::invalid_argument(
                "gauss_newton: data ROM coefficient sizes do not match the "
                "order");
        std::array<int, 4> sorted = settings.family_order;
        std::sort(sorted.begin(), sorted.end());
        if (sorted != std::array<int, 4>{0, 1, 2, 3})
            throw std::invalid_argument(
                "gauss_newton: family_order must be a permutation of 0..3");
        grid = spectrally_matched_grid(n, t_max);
        data_imp = coefficient_samples(data_rom, grid);
    }

    // Residual: differences of the four coefficient families (primary loss,
    // dual loss, primary impedance samples, dual impedance samples) in the
    // configured order.
    std::vector<double> residual_of(const RomCoefficients& c) const {
        const ImpedanceSamples imp = coefficient_samples(c, grid);
        std::vector<double> res;
        res.reserve(4 * n);
        for (int which : settings.family_order) {
            const std::vector<double>* model = nullptr;
            const std::vector<double>* target = nullptr;
            switch (which) {
                case 0: model = &c.r_primary; target = &data->r_primary; break;
                case 1: model = &c.r_dual; target = &data->r_dual; break;
                case 2:
                    model = &imp.zeta_primary;
                    target = &data_imp.zeta_primary;
                    break;
                default:
                    model = &imp.zeta_dual;
                    target = &data_imp.zeta_dual;
                    break;
            }
            for (std::size_t j = 0; j < n; ++j)
                res.push_back((*model)[j] - (*target)[j]);
        }
        return res;
    }

    // Full evaluation of a parameter vector; throws when the medium or its
    // ROM is invalid (nonpositive impedance, negative loss, regime failure).
    std::pair<std::vector<double>, RomCoefficients> eval(
        const std::vector<double>& x) const {
        ProfileParams params;
        params.t_max = t_max;
        params.n_cells = settings.fd_cells;
        params.fourier = unpack_medium(x, t_max, harmonics);
        const MediumProfile medium = make_profile(ProfileKind::fourier, params);
        ForwardSettings fwd;
        fwd.fd_cells = settings.fd_cells;
        RomCoefficients rc =
            forward_to_rom(medium, n, ExtractionMode::exact, fwd);
        return {residual_of(rc), std::move(rc)};
    }

    // Forward-difference Jacobian, one probe per parameter.  A probe that
    // lands on an invalid medium is retried at a tenth of the step.
    std::vector<double> jacobian(const std::vector<double>& x,
                                 const std::vector<double>& res) const {
        const std::size_t dim = x.size();
        const std::size_t rows = res.size();
        std::vector<std::vector<double>> columns(dim);
        std::vector<std::string> probe_errors(dim);
        parallel_for(dim, unsigned(settings.threads), [&](std::size_t k) {
            double delta = settings.delta;
            std::vector<double> probe;
            bool have_probe = false;
            for (int attempt = 0; attempt < 2 && !have_probe; ++attempt) {
                std::vector<double> xp = x;
                xp[k] += delta;
                try {
                    probe = eval(xp).first;
                    have_probe = true;
                } catch (const std::exception& err) {
                    if (attempt == 1) {
                        probe_errors[k] =
                            "gauss_newton: invalid medium while probing "
                            "parameter " +
                            std::to_string(k) + ": " + err.what();
                        return;
                    }
                    delta /= 10.0;
                }
            }
            std::vector<double> col(rows);
            for (std::size_t r = 0; r < rows; ++r)
                col[r] = (probe[r] - res[r]) / delta;
            columns[k] = std::move(col);
        });
        for (const std::string& err : probe_errors)
            if (!err.empty()) throw std::runtime_error(err);

        std::vector<double> jac(rows * dim);
        for (std::size_t r = 0; r < rows; ++r)
            for (std::size_t k = 0; k < dim; ++k)
                jac[r * dim + k] = columns[k][r];
        return jac;
    }
};

}  // namespace

// ============================================================================
// Forward map
// ============================================================================

double default_omega_max(std::size_t n, double t_max) {
    if (t_max <= 0.0)
        throw std::invalid_argument("default_omega_max: t_max must be positive");
    const double nd = double(n);
    double band;  // band on the unit interval
    if (nd <= 10.0) {
        band = 93.0;
    } else if (nd <= 40.0) {
        band = 93.0 + (124.0 - 93.0) * (nd - 10.0) / 30.0;
    } else if (nd <= 90.0) {
        band = 124.0 + (281.0 - 124.0) * (nd - 40.0) / 50.0;
    } else {
        // keep adding one resonance spacing per extra mode
        band = 281.0 + (nd - 90.0) * std::numbers::pi;
    }
    return band / t_max;
}

RomCoefficients forward_to_rom(const MediumProfile& medium, std::size_t n,
                               ExtractionMode mode,
                               const ForwardSettings& settings) {
    if (n == 0)
        throw std::invalid_argument("forward_to_rom: ROM order must be positive");
    const FdOperator op = assemble_fd(medium, settings.fd_cells);
    SpectralData data;
    if (mode == ExtractionMode::exact) {
        data = exact_spectral_data(op, n);
    } else {
        const double omega = settings.omega_max > 0.0
                                 ? settings.omega_max
                                 : default_omega_max(n, medium.t_max);
        const TransferSamples samples =
            sample_transfer(op, omega, settings.n_samples, settings.threads);
        const TailModel tail = estimate_r0(samples, medium.t_max, medium.zeta0);
        const RationalFit fit = fit_poles_residues(samples, tail, n);
        log::debug("forward_to_rom: rational fit misfit " +
                   std::to_string(fit.rel_misfit) + " after " +
                   std::to_string(fit.iterations) + " sweeps");
        data = fit.data;
    }
    return extract_coefficients(lanczos(data));
}

// ============================================================================
// Gauss-Newton refinement
// ============================================================================

std::vector<double> gn_residual(const RomCoefficients& data_rom,
                                const FourierMedium& medium, std::size_t n,
                                const GnSettings& settings) {
    const GnWorkspace ws(data_rom, medium.t_max, n, settings);
    return ws.eval(pack_medium(medium, ws.harmonics)).first;
}

JacobianProbe gn_jacobian(const RomCoefficients& data_rom,
                          const FourierMedium& at, std::size_t n,
                          const GnSettings& settings) {
    const GnWorkspace ws(data_rom, at.t_max, n, settings);
    const std::vector<double> x = pack_medium(at, ws.harmonics);
    JacobianProbe probe;
    probe.rows = 4 * n;
    probe.cols = x.size();
    probe.residual = ws.eval(x).first;
    probe.jacobian = ws.jacobian(x, probe.residual);
    return probe;
}

OptState gauss_newton(const RomCoefficients& data_rom, const FourierMedium& init,
                      std::size_t n, const GnSettings& settings) {
    const GnWorkspace ws(data_rom, init.t_max, n, settings);
    const std::size_t rows = 4 * n;

    std::vector<double> x = pack_medium(init, ws.harmonics);
    const std::size_t dim = x.size();

    auto [res, rc] = ws.eval(x);  // invalid initial medium is the caller's error
    double objective = squared_norm(res);

    OptState state;
    state.medium = unpack_medium(x, init.t_max, ws.harmonics);
    state.objective = objective;
    state.rom_search = rc;
    state.trace.push_back({0, objective, 0.0});
    log::debug("gauss_newton: initial objective " + std::to_string(objective));

    // Objective already at roundoff level: nothing to refine.
    constexpr double kObjectiveFloor = 1e-12;

    for (std::size_t iter = 1; iter <= settings.max_iter; ++iter) {
        if (objective <= kObjectiveFloor) {
            state.converged = true;
            break;
        }

        const std::vector<double> jac = ws.jacobian(x, res);

        std::vector<double> rhs(rows);
        for (std::size_t r = 0; r < rows; ++r) rhs[r] = -res[r];
        const std::vector<double> step =
            lstsq_svd(rows, dim, jac, rhs, settings.svd_cutoff);
        const double full_step_norm = std::sqrt(squared_norm(step));

        // Damped line search: halve until the objective decreases.
        double scale = 1.0;
        bool accepted = false;
        std::vector<double> best_x, best_res;
        RomCoefficients best_rc;
        double best_obj = 0.0;
        for (std::size_t halving = 0; halving <= settings.max_halvings;
             ++halving) {
            std::vector<double> candidate = x;
            for (std::size_t k = 0; k < dim; ++k)
                candidate[k] += scale * step[k];
            try {
                auto [cand_res, cand_rc] = ws.eval(candidate);
                const double cand_obj = squared_norm(cand_res);
                if (cand_obj < objective) {
                    best_x = std::move(candidate);
                    best_res = std::move(cand_res);
                    best_rc = std::move(cand_rc);
                    best_obj = cand_obj;
                    accepted = true;
                    break;
                }
            } catch (const std::exception&) {
                // invalid candidate counts as no decrease
            }
            scale *= 0.5;
        }

        if (!accepted) {
            state.line_search_warning = true;
            state.converged = true;
            log::info("gauss_newton: line search exhausted at iteration " +
                      std::to_string(iter) + "; stopping at objective " +
                      std::to_string(objective));
            break;
        }

        const double rel_decrease =
            (objective - best_obj) / std::max(objective, 1e-300);
        x = std::move(best_x);
        res = std::move(best_res);
        rc = std::move(best_rc);
        objective = best_obj;
        state.iteration = iter;
        state.trace.push_back({iter, objective, scale * full_step_norm});
        log::debug("gauss_newton: iteration " + std::to_string(iter) +
                   " objective " + std::to_string(objective) + " step " +
                   std::to_string(scale * full_step_norm));

        if (rel_decrease < settings.tol) {
            state.converged = true;
            break;
        }
    }

    state.medium = unpack_medium(x, init.t_max, ws.harmonics);
    state.objective = objective;
    state.rom_search = rc;
    return state;
}

}  // namespace lossyrom
