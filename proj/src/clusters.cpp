#include "cpinf/clusters.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

namespace cpinf {

namespace {

double rel_err(double a, double b) {
    return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1.0});
}

Vec3 centre_of(const AlbouyState& s, std::span<const std::size_t> block) {
    Vec3 c{};
    double mass = 0.0;
    for (std::size_t i : block) {
        const double m = s.system()->mass(i);
        c = c + s.position(i) * m;
        mass += m;
    }
    return c * (1.0 / mass);
}

double block_diameter(const AlbouyState& s, std::span<const std::size_t> block) {
    double d = 0.0;
    for (std::size_t a = 0; a < block.size(); ++a)
        for (std::size_t b = a + 1; b < block.size(); ++b)
            d = std::max(d, pair_distance(s, block[a], block[b]));
    return d;
}

double median(std::vector<double> v) {
    if (v.empty()) return 0.0;
    std::sort(v.begin(), v.end());
    const std::size_t mid = v.size() / 2;
    return v.size() % 2 ? v[mid] : 0.5 * (v[mid - 1] + v[mid]);
}

} // namespace

ClusterPartition::ClusterPartition(std::size_t body_count,
                                   std::vector<std::vector<std::size_t>> blocks)
    : body_count_(body_count), blocks_(std::move(blocks)) {
    std::set<std::size_t> seen;
    for (auto& block : blocks_) {
        if (block.empty()) throw PartitionError("partition blocks must be nonempty");
        std::sort(block.begin(), block.end());
        for (std::size_t i : block) {
            if (i >= body_count_) throw PartitionError("partition index out of range");
            if (!seen.insert(i).second) throw PartitionError("partition blocks overlap");
        }
    }
    if (seen.size() != body_count_)
        throw PartitionError("partition does not cover every body");
}

ClusterPartition ClusterPartition::single_block(std::size_t body_count) {
    std::vector<std::size_t> all(body_count);
    std::iota(all.begin(), all.end(), 0);
    return ClusterPartition(body_count, {all});
}

ClusterPartition ClusterPartition::singletons(std::size_t body_count) {
    std::vector<std::vector<std::size_t>> blocks;
    for (std::size_t i = 0; i < body_count; ++i) blocks.push_back({i});
    return ClusterPartition(body_count, std::move(blocks));
}

ClusterDecomposition decompose(const AlbouyState& s, const ClusterPartition& part) {
    if (part.body_count() != s.size())
        throw PartitionError("partition size does not match the state");
    const BodySystemPtr& sys = s.system();
    const std::size_t n = s.size();
    const DnVector* comps[6] = {&s.X(), &s.Y(), &s.Z(), &s.P(), &s.Q(), &s.R()};

    std::vector<std::array<std::vector<double>, 6>> cluster_entries(part.block_count());
    for (auto& arr : cluster_entries)
        for (auto& v : arr) v.assign(n, 0.0);
    std::array<std::vector<double>, 6> centre_entries;
    for (auto& v : centre_entries) v.assign(n, 0.0);

    for (std::size_t b = 0; b < part.block_count(); ++b) {
        const auto& block = part.block(b);
        double block_mass = 0.0;
        for (std::size_t i : block) block_mass += sys->mass(i);
        for (int c = 0; c < 6; ++c) {
            auto& piece = cluster_entries[b][static_cast<std::size_t>(c)];
            double weighted = 0.0;
            for (std::size_t i : block) weighted += sys->mass(i) * (*comps[c])[i];
            const double centre = weighted / block_mass;
            for (std::size_t i : block) {
                piece[i] = (*comps[c])[i] - centre;
                centre_entries[static_cast<std::size_t>(c)][i] = centre;
            }
            // Second centring pass on the block: keeps the piece inside D_N
            // even when the block entries nearly coincide and the first
            // subtraction cancels below roundoff.
            double residual = 0.0;
            for (std::size_t i : block) residual += sys->mass(i) * piece[i];
            const double shift = residual / block_mass;
            for (std::size_t i : block) piece[i] -= shift;
        }
    }

    ClusterDecomposition out{
        {},
        AlbouyState(DnVector::centered(sys, centre_entries[0]),
                    DnVector::centered(sys, centre_entries[1]),
                    DnVector::centered(sys, centre_entries[2]),
                    DnVector::centered(sys, centre_entries[3]),
                    DnVector::centered(sys, centre_entries[4]),
                    DnVector::centered(sys, centre_entries[5]))};
    out.cluster_states.reserve(part.block_count());
    for (auto& arr : cluster_entries)
        out.cluster_states.emplace_back(DnVector(sys, std::move(arr[0])),
                                        DnVector(sys, std::move(arr[1])),
                                        DnVector(sys, std::move(arr[2])),
                                        DnVector(sys, std::move(arr[3])),
                                        DnVector(sys, std::move(arr[4])),
                                        DnVector(sys, std::move(arr[5])));
    return out;
}

std::vector<Vec3> block_centres(const AlbouyState& s, const ClusterPartition& part) {
    std::vector<Vec3> centres;
    centres.reserve(part.block_count());
    for (const auto& block : part.blocks()) centres.push_back(centre_of(s, block));
    return centres;
}

double min_centre_distance(const AlbouyState& s, const ClusterPartition& part) {
    const auto centres = block_centres(s, part);
    double best = std::numeric_limits<double>::infinity();
    for (std::size_t a = 0; a < centres.size(); ++a)
        for (std::size_t b = a + 1; b < centres.size(); ++b)
            best = std::min(best, norm(centres[a] - centres[b]));
    return best;
}

double max_block_diameter(const AlbouyState& s, const ClusterPartition& part) {
    double d = 0.0;
    for (const auto& block : part.blocks()) d = std::max(d, block_diameter(s, block));
    return d;
}

AdditivityReport additivity_report(std::span<const AlbouyState> seq,
                                   const ClusterPartition& part) {
    AdditivityReport report;
    std::vector<double> dists, v_rems, g_rems;
    for (std::size_t k = 0; k < seq.size(); ++k) {
        const AlbouyState& s = seq[k];
        const ClusterDecomposition dec = decompose(s, part);
        AdditivityRow row;
        row.k = k;
        row.min_centre_dist = min_centre_distance(s, part);

        const Observables whole = observables(s);
        double k_sum = 0.0, i_sum = 0.0;
        Vec3 l_sum{};
        auto accumulate = [&](const AlbouyState& piece) {
            const Observables o = observables(piece);
            k_sum += o.K;
            i_sum += o.I;
            l_sum = l_sum + o.L;
        };
        for (const auto& piece : dec.cluster_states) accumulate(piece);
        accumulate(dec.centres_state);
        row.k_error = rel_err(k_sum, whole.K);
        row.i_error = rel_err(i_sum, whole.I);
        row.l_error = norm(l_sum - whole.L) / std::max({norm(whole.L), norm(l_sum), 1.0});

        try {
            const BodySystem& sys = *s.system();
            const auto coeffs = PairCoefficients::from_system(sys);
            const auto kernel = system_kernel(sys);
            double v_blocks = 0.0;
            PhaseGradient g_blocks = grad_potential_within(s, coeffs, kernel, part.block(0));
            v_blocks += potential_within(s, coeffs, kernel, part.block(0));
            for (std::size_t b = 1; b < part.block_count(); ++b) {
                v_blocks += potential_within(s, coeffs, kernel, part.block(b));
                g_blocks = g_blocks + grad_potential_within(s, coeffs, kernel, part.block(b));
            }
            row.v_remainder = potential(s, coeffs, kernel) - v_blocks;
            row.grad_remainder = (grad_potential(s, coeffs, kernel) - g_blocks).norm();
            if (part.block_count() >= 2 && std::isfinite(row.min_centre_dist)) {
                dists.push_back(row.min_centre_dist);
                v_rems.push_back(std::abs(row.v_remainder));
                g_rems.push_back(row.grad_remainder);
            }
        } catch (const CollisionError&) {
            row.v_remainder = std::numeric_limits<double>::quiet_NaN();
            row.grad_remainder = std::numeric_limits<double>::quiet_NaN();
        }
        report.rows.push_back(row);
    }
    TrendOptions opts;
    opts.trailing_fraction = 1.0;  // the caller supplies the distance grid
    report.v_decay = fit_log_trend(dists, v_rems, opts);
    report.grad_decay = fit_log_trend(dists, g_rems, opts);
    return report;
}

ClusterPartition detect_clusters(std::span<const AlbouyState> seq, std::size_t window,
                                 double threshold) {
    if (window < 2) throw DomainError("cluster detection needs a window of at least 2");
    if (seq.size() < window)
        throw DomainError("sequence shorter than the detection window");
    const std::size_t n = seq.front().size();
    const std::size_t t0 = seq.size() - window;

    std::vector<std::size_t> remaining(n);
    std::iota(remaining.begin(), remaining.end(), 0);
    std::vector<std::vector<std::size_t>> blocks;

    while (!remaining.empty()) {
        std::vector<std::size_t> cluster{remaining.front()};
        remaining.erase(remaining.begin());
        bool changed = true;
        while (changed) {
            changed = false;
            for (auto it = remaining.begin(); it != remaining.end();) {
                // Trailing-window surrogate for the liminf of the distance of
                // this body to the cluster centre.
                double dmin = std::numeric_limits<double>::infinity();
                std::vector<double> diams;
                for (std::size_t t = t0; t < seq.size(); ++t) {
                    const Vec3 c = centre_of(seq[t], cluster);
                    dmin = std::min(dmin, norm(seq[t].position(*it) - c));
                    diams.push_back(block_diameter(seq[t], cluster));
                }
                if (dmin < threshold * (median(diams) + 1.0)) {
                    cluster.push_back(*it);
                    it = remaining.erase(it);
                    changed = true;
                } else {
                    ++it;
                }
            }
        }
        std::sort(cluster.begin(), cluster.end());
        blocks.push_back(std::move(cluster));
    }

    ClusterPartition part(n, std::move(blocks));
    if (part.block_count() >= 2) {
        // Demand a factor-10 scale gap between intra-cluster spread and
        // inter-centre separations, and separations that do not shrink.
        std::vector<double> diams;
        for (std::size_t t = t0; t < seq.size(); ++t)
            diams.push_back(max_block_diameter(seq[t], part));
        const double intra = median(diams);
        const double inter_last = min_centre_distance(seq.back(), part);
        const double inter_first = min_centre_distance(seq[t0], part);
        if (inter_last < 10.0 * (intra + 1.0) || inter_last < inter_first)
            throw InconclusiveClustersError(
                "no scale separation between intra- and inter-cluster distances; "
                "a longer sequence may separate them");
    }
    return part;
}

ClusterCriticalityReport cluster_criticality(std::span<const AlbouyState> seq,
                                             const ClusterPartition& part,
                                             std::span<const Multiplier> multipliers) {
    if (multipliers.size() != seq.size())
        throw DimensionError("one multiplier per state is required");
    ClusterCriticalityReport report;
    report.blocks.resize(part.block_count());
    for (std::size_t b = 0; b < part.block_count(); ++b)
        report.blocks[b].block = part.block(b);

    for (std::size_t k = 0; k < seq.size(); ++k) {
        const ClusterDecomposition dec = decompose(seq[k], part);
        report.whole_residual_norms.push_back(lagrange_residual(seq[k], multipliers[k]).norm);
        for (std::size_t b = 0; b < part.block_count(); ++b) {
            const auto& piece = dec.cluster_states[b];
            report.blocks[b].residual_norms.push_back(
                lagrange_residual_within(piece, multipliers[k], part.block(b)).norm);
            PhaseGradient g = grad_potential_within(
                piece, PairCoefficients::from_system(*piece.system()),
                system_kernel(*piece.system()), part.block(b));
            g.p = piece.P();
            g.q = piece.Q();
            g.r = piece.R();
            report.blocks[b].grad_norms.push_back(g.norm());
        }
    }
    report.whole_trend = fit_log_trend({}, report.whole_residual_norms);
    for (auto& block : report.blocks)
        block.trend = fit_log_trend({}, block.residual_norms);
    return report;
}

} // namespace cpinf
