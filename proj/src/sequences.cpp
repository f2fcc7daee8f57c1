#include "cpinf/sequences.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace cpinf {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void validate_three_body_roles(const BodySystemPtr& sys,
                               std::pair<std::size_t, std::size_t> pair,
                               std::size_t singleton) {
    if (sys->size() != 3)
        throw DomainError("the two-cluster families are built on three bodies");
    const auto [i, j] = pair;
    if (i == j || i > 2 || j > 2 || singleton > 2 || singleton == i || singleton == j)
        throw DomainError("pair and singleton must partition the three bodies");
}

void validate_schedule(const Schedule& schedule) {
    if (!(schedule.rho > 1.0)) throw DomainError("schedule rho must exceed 1");
    if (schedule.count < 2) throw DomainError("schedule needs at least two indices");
    if (!(schedule.z0 > 0.0)) throw DomainError("schedule z0 must be positive");
}

std::vector<double> component_entries(const DnVector& v) { return v.entries(); }

/// Fit helper that skips non-finite samples (collision rows).
TrendFit fit_filtered(std::span<const double> scale, std::span<const double> values,
                      const TrendOptions& opts = {}) {
    std::vector<double> xs, ys;
    for (std::size_t k = 0; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) continue;
        if (!scale.empty()) xs.push_back(scale[k]);
        ys.push_back(values[k]);
    }
    return fit_log_trend(xs, ys, opts);
}

double relative_trailing_range(std::span<const double> values) {
    if (values.size() < 2) return kNaN;
    const std::size_t begin = values.size() / 2;
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    double mid = 0.0;
    std::size_t used = 0;
    for (std::size_t k = begin; k < values.size(); ++k) {
        if (!std::isfinite(values[k])) return kNaN;
        lo = std::min(lo, values[k]);
        hi = std::max(hi, values[k]);
        mid += std::abs(values[k]);
        ++used;
    }
    mid /= static_cast<double>(used);
    return (hi - lo) / std::max(1.0, mid);
}

bool residual_relatively_tiny(std::span<const double> residuals,
                              std::span<const double> scales, double floor) {
    if (residuals.empty()) return false;
    const std::size_t begin = residuals.size() / 2;
    for (std::size_t k = begin; k < residuals.size(); ++k) {
        if (!std::isfinite(residuals[k])) return false;
        if (residuals[k] > floor * std::max(scales[k], 1.0)) return false;
    }
    return true;
}

} // namespace

StateSequence generate_horizontal(const BodySystemPtr& sys,
                                  std::pair<std::size_t, std::size_t> pair,
                                  std::size_t singleton, double ell,
                                  const Schedule& schedule) {
    validate_three_body_roles(sys, pair, singleton);
    validate_schedule(schedule);
    if (ell == 0.0) throw DomainError("a horizontal sequence needs nonzero angular momentum");
    const TwoBodyReduction red = reduce_two_body(*sys, pair);
    if (!(red.gamma < 0.0))
        throw NoRelativeEquilibriumError("the pair of a horizontal sequence must attract",
                                         red.gamma);
    const RelativeEquilibrium re = solve_relative_equilibrium(red, ell);
    const AlbouyState base = embed_re(sys, pair, singleton, re, 0.0);

    const double pair_mass = sys->mass(pair.first) + sys->mass(pair.second);
    const double c = sys->mass(singleton) / pair_mass;

    StateSequence seq;
    seq.meta.family = SequenceFamily::Horizontal;
    seq.meta.schedule = schedule;
    seq.meta.pair = pair;
    seq.meta.singleton = singleton;
    seq.meta.ell = ell;
    seq.meta.partition = ClusterPartition(
        3, {{pair.first, pair.second}, {singleton}});
    std::vector<Multiplier> mults;
    double z = schedule.z0;
    for (std::size_t k = 0; k < schedule.count; ++k, z *= schedule.rho) {
        std::vector<double> zc(3, 0.0);
        zc[pair.first] = c * z;
        zc[pair.second] = c * z;
        zc[singleton] = -z;
        seq.states.emplace_back(base.X(), base.Y(), DnVector(sys, std::move(zc)), base.P(),
                                base.Q(), base.R());
        seq.meta.scale.push_back(z);
        mults.push_back({{0.0, 0.0, re.omega}});
    }
    seq.multipliers = std::move(mults);
    return seq;
}

StateSequence generate_planar_obstruction(const BodySystemPtr& sys,
                                          std::pair<std::size_t, std::size_t> pair,
                                          std::size_t singleton, double ell,
                                          const Schedule& schedule) {
    validate_three_body_roles(sys, pair, singleton);
    validate_schedule(schedule);
    if (ell == 0.0) throw DomainError("the planar family needs nonzero angular momentum");
    const TwoBodyReduction red = reduce_two_body(*sys, pair);
    if (!(red.gamma < 0.0))
        throw NoRelativeEquilibriumError("the pair of the planar family must attract",
                                         red.gamma);
    const RelativeEquilibrium re = solve_relative_equilibrium(red, ell);
    const AlbouyState base = embed_re(sys, pair, singleton, re, 0.0);

    const double pair_mass = sys->mass(pair.first) + sys->mass(pair.second);
    const double c = sys->mass(singleton) / pair_mass;

    StateSequence seq;
    seq.meta.family = SequenceFamily::PlanarObstruction;
    seq.meta.schedule = schedule;
    seq.meta.pair = pair;
    seq.meta.singleton = singleton;
    seq.meta.ell = ell;
    seq.meta.partition = ClusterPartition(
        3, {{pair.first, pair.second}, {singleton}});
    double x = schedule.z0;
    for (std::size_t k = 0; k < schedule.count; ++k, x *= schedule.rho) {
        std::vector<double> xc = component_entries(base.X());
        xc[pair.first] += c * x;
        xc[pair.second] += c * x;
        xc[singleton] -= x;
        seq.states.emplace_back(DnVector(sys, std::move(xc)), base.Y(), base.Z(), base.P(),
                                base.Q(), base.R());
        seq.meta.scale.push_back(x);
    }
    return seq;  // no multipliers attached; diagnostics fit them per index
}

StateSequence generate_shrinking_pair(const BodySystemPtr& sys,
                                      std::pair<std::size_t, std::size_t> pair, double ell,
                                      const Schedule& schedule) {
    if (sys->size() != 2) throw DomainError("the shrinking family is a two-body construction");
    if (pair.first + pair.second != 1 || pair.first == pair.second)
        throw DomainError("pair must name the two bodies");
    validate_schedule(schedule);
    if (ell == 0.0) throw DomainError("the shrinking family needs nonzero angular momentum");
    const TwoBodyReduction red = reduce_two_body(*sys, pair);
    if (red.kernel.degree() != -1.0)
        throw DomainError("the dilation family assumes a degree -1 kernel");
    if (red.gamma == 0.0) throw DomainError("the pair must interact");

    AlbouyState base = AlbouyState::zero(sys);
    double omega_base = 0.0;
    const bool attracting = red.gamma < 0.0;
    if (attracting) {
        const RelativeEquilibrium re = solve_relative_equilibrium(red, ell);
        base = embed_re(sys, pair, std::nullopt, re, 0.0);
        omega_base = re.omega;
    } else {
        // Circular velocity profile with L_z = ell at the natural separation
        // scale; not an equilibrium (the pair repels).
        const double r0 = ell * ell / (red.mu * red.gamma);
        RelativeEquilibrium profile;
        profile.r_star = r0;
        profile.ell = ell;
        profile.omega = ell / (red.mu * r0 * r0);
        base = embed_re(sys, pair, std::nullopt, profile, 0.0);
    }

    StateSequence seq;
    seq.meta.family = SequenceFamily::ShrinkingPair;
    seq.meta.schedule = schedule;
    seq.meta.pair = pair;
    seq.meta.ell = ell;
    std::vector<Multiplier> mults;
    for (std::size_t k = 0; k < schedule.count; ++k) {
        const double s = -0.5 * static_cast<double>(k) * std::log(schedule.rho);
        seq.states.push_back(dilate(s, base, -1.0));
        seq.meta.scale.push_back(std::pow(schedule.rho, static_cast<double>(k)));
        if (attracting) mults.push_back({{0.0, 0.0, omega_base * std::exp(-3.0 * s)}});
    }
    if (attracting) seq.multipliers = std::move(mults);
    return seq;
}

StateSequence constant_sequence(const AlbouyState& s, std::size_t count) {
    if (count < 2) throw DomainError("a sequence needs at least two states");
    StateSequence seq;
    seq.states.assign(count, s);
    return seq;
}

SequenceDiagnostics diagnose(const StateSequence& seq) {
    if (seq.states.empty()) throw DomainError("cannot diagnose an empty sequence");
    if (seq.multipliers && seq.multipliers->size() != seq.states.size())
        throw DimensionError("multiplier sequence length must match the states");
    for (const auto& s : seq.states)
        if (!same_system(s.system(), seq.states.front().system()))
            throw DimensionError("all states of a sequence must share one body system");

    SequenceDiagnostics diag;
    const BodySystem& sys = *seq.states.front().system();
    const double mu = -sys.kernel_degree();

    // Block used for the pair-cluster estimates, when the generator recorded
    // a partition.
    const std::vector<std::size_t>* gap_block = nullptr;
    if (seq.meta.partition)
        for (const auto& block : seq.meta.partition->blocks())
            if (block.size() >= 2 && !gap_block) gap_block = &block;

    std::vector<double> residuals, ratios, r_norms, gaps_ii, l_drift_scale;
    const Vec3 l0 = observables(seq.states.front()).L;

    for (std::size_t k = 0; k < seq.states.size(); ++k) {
        const AlbouyState& s = seq.states[k];
        DiagnosticsRow row;
        row.k = k;
        row.z = seq.meta.scale.empty() ? static_cast<double>(k) : seq.meta.scale[k];

        const Observables obs = observables(s);
        row.K = obs.K;
        row.I = obs.I;
        row.L = obs.L;
        row.H = obs.H;
        row.V = obs.V;
        row.collision = obs.collision;

        if (seq.multipliers) {
            row.lambda = (*seq.multipliers)[k].lambda;
        } else if (!row.collision) {
            try {
                row.lambda = best_multiplier(s).lambda;
            } catch (const DegenerateGramError&) {
                row.lambda = {0.0, 0.0, 0.0};
                row.degenerate_multiplier = true;
            }
        }
        row.lambda_norm = norm(row.lambda);

        if (!row.collision) {
            row.residual_norm = lagrange_residual(s, Multiplier{row.lambda}).norm;
            row.grad_h_norm = grad_hamiltonian(s).norm();
        } else {
            row.residual_norm = kNaN;
            row.grad_h_norm = kNaN;
        }

        Mat3 frame = Mat3::identity();
        AlbouyState rotated = s;
        if (row.lambda_norm > 0.0) {
            const MultiplierFrame mf = to_multiplier_coordinates(s, Multiplier{row.lambda});
            frame = mf.rotation;
            rotated = mf.state;
        }
        const IzKz izkz = iz_kz(rotated);
        row.I_z = izkz.I_z;
        row.K_z = izkz.K_z;
        row.L_z = mass_inner(rotated.X(), rotated.Q()) - mass_inner(rotated.Y(), rotated.P());
        row.r_norm = mass_norm(rotated.R());

        // Multiplier-frame estimate gaps on the attracting pair block (the
        // singleton piece contributes zero).
        const AlbouyState* gap_state = &rotated;
        AlbouyState gap_piece = rotated;
        if (gap_block) {
            const ClusterDecomposition dec = decompose(s, *seq.meta.partition);
            for (std::size_t b = 0; b < seq.meta.partition->block_count(); ++b)
                if (&seq.meta.partition->block(b) == gap_block)
                    gap_piece = row.lambda_norm > 0.0 ? rotate(frame, dec.cluster_states[b])
                                                      : dec.cluster_states[b];
            gap_state = &gap_piece;
        }
        const IzKz piece_izkz = iz_kz(*gap_state);
        const double piece_lz =
            mass_inner(gap_state->X(), gap_state->Q()) -
            mass_inner(gap_state->Y(), gap_state->P());
        row.gap_ii = std::abs(std::sqrt(piece_izkz.K_z) -
                              row.lambda_norm * std::sqrt(piece_izkz.I_z));
        row.gap_iii = piece_izkz.I_z > 1e-300
                          ? std::abs(std::sqrt(piece_izkz.K_z) -
                                     std::abs(piece_lz) / std::sqrt(piece_izkz.I_z))
                          : kNaN;

        if (row.V && row.I + row.K > 0.0) {
            const double kv = row.K + mu * *row.V;
            row.ratio_kplusv = kv * kv / (row.I + row.K);
        }

        row.min_pair_dist = min_pair_distance(s);
        row.max_pair_dist = max_pair_distance(s);
        row.min_centre_dist =
            seq.meta.partition && seq.meta.partition->block_count() >= 2
                ? min_centre_distance(s, *seq.meta.partition)
                : kNaN;

        residuals.push_back(row.residual_norm);
        ratios.push_back(row.ratio_kplusv ? *row.ratio_kplusv : kNaN);
        r_norms.push_back(row.r_norm);
        gaps_ii.push_back(row.gap_ii);
        diag.max_l_drift = std::max(diag.max_l_drift, norm(row.L - l0));
        diag.rows.push_back(std::move(row));
    }

    diag.residual_trend = fit_filtered(seq.meta.scale, residuals);
    diag.ratio_trend = fit_filtered(seq.meta.scale, ratios);
    diag.r_norm_trend = fit_filtered(seq.meta.scale, r_norms);
    diag.gap_ii_trend = fit_filtered(seq.meta.scale, gaps_ii);

    std::vector<double> grad_scales;
    for (const auto& row : diag.rows) grad_scales.push_back(row.grad_h_norm);
    diag.effectively_critical =
        diag.residual_trend.tends_to_zero() ||
        residual_relatively_tiny(residuals, grad_scales, 1e-10);
    return diag;
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::RelativeEquilibrium: return "RelativeEquilibrium";
        case Verdict::Collision: return "Collision";
        case Verdict::CriticalPointAtInfinity: return "CriticalPointAtInfinity";
        case Verdict::NotCritical: return "NotCritical";
        case Verdict::Inconclusive: return "Inconclusive";
    }
    return "Inconclusive";
}

Classification classify(const StateSequence& seq, const SequenceDiagnostics& diag,
                        const ClassifierOptions& opts) {
    Classification out;
    const std::size_t n = diag.rows.size();
    if (n < 4) {
        out.notes.push_back("sequence too short to fit trends");
        return out;
    }
    const auto& scale = seq.meta.scale;
    TrendOptions topts;
    topts.slope_threshold = opts.slope_threshold;

    std::vector<double> residuals, grad_scales, diam, min_dist, v_abs, h_vals, i_vals;
    for (const auto& row : diag.rows) {
        residuals.push_back(row.residual_norm);
        grad_scales.push_back(row.grad_h_norm);
        diam.push_back(row.max_pair_dist);
        min_dist.push_back(row.min_pair_dist);
        v_abs.push_back(row.V ? std::abs(*row.V) : kNaN);
        h_vals.push_back(row.H ? *row.H : kNaN);
        i_vals.push_back(row.I);
    }

    const TrendFit res_trend = fit_filtered(scale, residuals, topts);
    out.residual_to_zero =
        res_trend.tends_to_zero() ||
        residual_relatively_tiny(residuals, grad_scales, opts.relative_residual_floor);
    out.l_drift = diag.max_l_drift;

    if (!out.residual_to_zero) {
        out.verdict = Verdict::NotCritical;
        out.notes.push_back("no compatible multiplier sequence: residual does not tend to 0");
        return out;
    }

    const TrendFit diam_trend = fit_filtered(scale, diam, topts);
    const TrendFit min_dist_trend = fit_filtered(scale, min_dist, topts);
    const TrendFit v_trend = fit_filtered(scale, v_abs, topts);
    out.diameter_bounded = !diam_trend.tends_to_infinity();
    out.min_dist_to_zero = min_dist_trend.tends_to_zero();

    double last_v = kNaN, last_h = kNaN;
    for (const auto& row : diag.rows) {
        if (row.V) last_v = *row.V;
        if (row.H) last_h = *row.H;
    }
    out.v_to_minus_inf = v_trend.tends_to_infinity() && last_v < 0.0;

    if (out.diameter_bounded && out.min_dist_to_zero && out.v_to_minus_inf) {
        const TrendFit h_trend = fit_filtered(scale, h_vals, topts);
        out.h_to_minus_inf = h_trend.tends_to_infinity() && last_h < 0.0;
        if (out.h_to_minus_inf) {
            out.verdict = Verdict::Collision;
        } else {
            out.verdict = Verdict::Inconclusive;
            out.notes.push_back("collision geometry but H -> -inf not confirmed");
        }
        return out;
    }

    if (out.diameter_bounded) {
        const bool away_from_collision = bounded_away_from_zero(min_dist);
        const double i_range = relative_trailing_range(i_vals);
        const bool shape_convergent = std::isfinite(i_range) && i_range < 1e-2;
        if (away_from_collision && shape_convergent) {
            out.verdict = Verdict::RelativeEquilibrium;
            return out;
        }
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back("bounded configuration without collision or shape convergence");
        return out;
    }

    // Unbounded configuration: the only critical outcome left is a critical
    // point at infinity, which needs separating clusters of relative
    // equilibria on a horizontal sequence.
    out.l_constant = diag.max_l_drift <=
                     opts.l_drift_tolerance * std::max(1.0, norm(diag.rows.front().L));
    std::vector<double> h_delta;
    for (std::size_t k = 0; k + 1 < n; ++k)
        h_delta.push_back(std::isfinite(h_vals[k]) && std::isfinite(last_h)
                              ? std::abs(h_vals[k] - last_h)
                              : kNaN);
    const TrendFit h_delta_trend = fit_filtered(
        scale.empty() ? std::span<const double>{}
                      : std::span<const double>(scale.data(), n - 1),
        h_delta, topts);
    const double h_range = relative_trailing_range(h_vals);
    out.h_convergent = h_delta_trend.tends_to_zero() ||
                       (std::isfinite(h_range) && h_range < 1e-3);

    ClusterPartition part = ClusterPartition::single_block(seq.states.front().size());
    try {
        part = detect_clusters(seq.states, opts.cluster_window, opts.cluster_threshold);
    } catch (const InconclusiveClustersError& e) {
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back(std::string("cluster detection inconclusive: ") + e.what());
        return out;
    }
    out.partition = part;
    if (part.block_count() < 2) {
        out.verdict = Verdict::Inconclusive;
        out.notes.push_back("configuration grows but no separating clusters were found");
        return out;
    }

    std::vector<double> centre_dist;
    for (const auto& s : seq.states) centre_dist.push_back(min_centre_distance(s, part));
    const bool centres_diverge = fit_filtered(scale, centre_dist, topts).tends_to_infinity();

    std::vector<Multiplier> mults;
    for (const auto& row : diag.rows) mults.push_back({row.lambda});
    const ClusterCriticalityReport crit = cluster_criticality(seq.states, part, mults);

    bool all_blocks_re = true;
    for (std::size_t b = 0; b < part.block_count(); ++b) {
        BlockAssessment assess;
        assess.block = part.block(b);
        assess.last_residual = crit.blocks[b].residual_norms.back();
        if (part.block(b).size() == 1) {
            assess.re_like = true;
        } else {
            const bool block_critical =
                crit.blocks[b].trend.tends_to_zero() ||
                residual_relatively_tiny(crit.blocks[b].residual_norms,
                                         crit.blocks[b].grad_norms,
                                         opts.relative_residual_floor);
            std::vector<double> bdiam, bmin;
            for (const auto& s : seq.states) {
                double dmax = 0.0, dmin = std::numeric_limits<double>::infinity();
                for (std::size_t a = 0; a < part.block(b).size(); ++a)
                    for (std::size_t c = a + 1; c < part.block(b).size(); ++c) {
                        const double d = pair_distance(s, part.block(b)[a], part.block(b)[c]);
                        dmax = std::max(dmax, d);
                        dmin = std::min(dmin, d);
                    }
                bdiam.push_back(dmax);
                bmin.push_back(dmin);
            }
            const bool block_bounded = !fit_filtered(scale, bdiam, topts).tends_to_infinity();
            assess.re_like =
                block_critical && block_bounded && bounded_away_from_zero(bmin);
        }
        all_blocks_re = all_blocks_re && assess.re_like;
        out.blocks.push_back(std::move(assess));
    }

    if (out.l_constant && out.h_convergent && centres_diverge && all_blocks_re) {
        out.verdict = Verdict::CriticalPointAtInfinity;
        return out;
    }
    out.verdict = Verdict::Inconclusive;
    if (!out.l_constant) out.notes.push_back("angular momentum drifts along the sequence");
    if (!out.h_convergent) out.notes.push_back("energy does not converge");
    if (!centres_diverge) out.notes.push_back("cluster centres do not diverge");
    if (!all_blocks_re) out.notes.push_back("a cluster fails the relative equilibrium check");
    return out;
}

SmallSequenceReport verify_small_sequence(const StateSequence& seq) {
    SmallSequenceReport rep;
    const SequenceDiagnostics diag = diagnose(seq);
    const auto& scale = seq.meta.scale;

    std::vector<double> i_vals, h_abs, lambda_norms, residuals;
    double last_h = kNaN;
    for (const auto& row : diag.rows) {
        i_vals.push_back(row.I);
        h_abs.push_back(row.H ? std::abs(*row.H) : kNaN);
        if (row.H) last_h = *row.H;
        lambda_norms.push_back(row.lambda_norm);
        residuals.push_back(row.residual_norm);
    }
    rep.i_trend = fit_filtered(scale, i_vals);
    bool nonincreasing = true;
    for (std::size_t k = 0; k + 1 < i_vals.size(); ++k)
        nonincreasing = nonincreasing && i_vals[k + 1] <= i_vals[k] * (1.0 + 1e-9);
    rep.accepted = nonincreasing && rep.i_trend.tends_to_zero();
    if (!rep.accepted) {
        rep.reason = "not a small sequence: moment of inertia does not decrease to zero";
        return rep;
    }

    rep.critical = diag.effectively_critical;
    rep.h_trend = fit_filtered(scale, h_abs);
    rep.h_to_minus_inf = rep.h_trend.tends_to_infinity() && last_h < 0.0;
    rep.lambda_trend = fit_filtered(scale, lambda_norms);
    rep.lambda_to_inf = rep.lambda_trend.tends_to_infinity();

    double min_res = std::numeric_limits<double>::infinity();
    for (double r : residuals)
        if (std::isfinite(r)) min_res = std::min(min_res, r);
    rep.residual_floor_ratio =
        std::isfinite(residuals.front()) && residuals.front() > 0.0
            ? min_res / residuals.front()
            : kNaN;
    return rep;
}

KCriticalReport verify_k_critical(const StateSequence& seq) {
    if (seq.states.empty()) throw DomainError("cannot verify an empty sequence");
    if (seq.multipliers && seq.multipliers->size() != seq.states.size())
        throw DimensionError("multiplier sequence length must match the states");
    KCriticalReport rep;
    const auto& scale = seq.meta.scale;

    std::vector<double> residuals, scales, k_vals, l_norms, iz_vals, lz_abs;
    for (std::size_t k = 0; k < seq.states.size(); ++k) {
        const AlbouyState& s = seq.states[k];
        Multiplier lambda{};
        if (seq.multipliers) {
            lambda = (*seq.multipliers)[k];
        } else {
            try {
                lambda = best_multiplier_kinetic(s);
            } catch (const DegenerateGramError&) {
                lambda = Multiplier{};
            }
        }
        residuals.push_back(lagrange_residual_kinetic(s, lambda).norm);
        scales.push_back(grad_kinetic(s).norm());

        const Observables obs = observables(s);
        k_vals.push_back(obs.K);
        l_norms.push_back(norm(obs.L));

        AlbouyState rotated = s;
        if (lambda.norm() > 0.0)
            rotated = to_multiplier_coordinates(s, lambda).state;
        iz_vals.push_back(iz_kz(rotated).I_z);
        lz_abs.push_back(std::abs(mass_inner(rotated.X(), rotated.Q()) -
                                  mass_inner(rotated.Y(), rotated.P())));
    }

    rep.residual_trend = fit_filtered(scale, residuals);
    rep.k_trend = fit_filtered(scale, k_vals);
    rep.l_norm_trend = fit_filtered(scale, l_norms);
    rep.iz_trend = fit_filtered(scale, iz_vals);

    rep.k_critical = rep.residual_trend.tends_to_zero() ||
                     residual_relatively_tiny(residuals, scales, 1e-10);
    rep.k_bounded_away_zero = bounded_away_from_zero(k_vals);
    rep.lz_bounded_away_zero = bounded_away_from_zero(lz_abs);
    rep.k_to_zero = rep.k_trend.tends_to_zero();

    rep.branch_a.hypothesis_met = rep.k_critical && rep.k_bounded_away_zero;
    rep.branch_a.conclusion_holds = rep.l_norm_trend.tends_to_infinity();
    rep.branch_b.hypothesis_met = rep.k_critical && rep.lz_bounded_away_zero;
    rep.branch_b.conclusion_holds =
        rep.k_trend.tends_to_zero() && rep.iz_trend.tends_to_zero();

    if (!rep.k_critical) {
        rep.status = "not K-critical; lemma hypotheses not met";
    } else if (rep.branch_a.hypothesis_met) {
        rep.status = rep.branch_a.conclusion_holds
                         ? "K-critical with K bounded away from zero; |L| -> inf confirmed"
                         : "K-critical with K bounded away from zero but |L| stays bounded";
    } else if (rep.branch_b.hypothesis_met) {
        rep.status = rep.branch_b.conclusion_holds
                         ? "K-critical with L_z bounded away from zero; K, I_z -> 0 confirmed"
                         : "K-critical with L_z bounded away from zero but K or I_z persists";
    } else {
        rep.status = rep.k_to_zero ? "K-critical; hypotheses not met; K -> 0"
                                   : "K-critical; hypotheses not met";
    }
    return rep;
}

} // namespace cpinf
