#ifndef CPINF_CLUSTERS_HPP
#define CPINF_CLUSTERS_HPP

#include <span>
#include <vector>

#include "cpinf/integral_map.hpp"
#include "cpinf/trend.hpp"

namespace cpinf {

/// An ordered partition of body indices {0..N-1} into disjoint nonempty
/// blocks. Index sets are kept sorted for deterministic output.
class ClusterPartition {
public:
    ClusterPartition(std::size_t body_count, std::vector<std::vector<std::size_t>> blocks);

    static ClusterPartition single_block(std::size_t body_count);
    static ClusterPartition singletons(std::size_t body_count);

    std::size_t body_count() const { return body_count_; }
    std::size_t block_count() const { return blocks_.size(); }
    const std::vector<std::vector<std::size_t>>& blocks() const { return blocks_; }
    const std::vector<std::size_t>& block(std::size_t b) const { return blocks_[b]; }

private:
    std::size_t body_count_;
    std::vector<std::vector<std::size_t>> blocks_;
};

/// The D_N cluster decomposition of a state, applied componentwise: one
/// cluster state per block (entries centred on the block mass centre, zero
/// outside the block) plus the centres state (block centres replicated over
/// block entries). The pieces are mutually mass-orthogonal and sum back to
/// the original state.
struct ClusterDecomposition {
    std::vector<AlbouyState> cluster_states;
    AlbouyState centres_state;
};

ClusterDecomposition decompose(const AlbouyState& s, const ClusterPartition& part);

/// Positions of the block mass centres.
std::vector<Vec3> block_centres(const AlbouyState& s, const ClusterPartition& part);

/// Smallest distance between two block centres; +inf for a single block.
double min_centre_distance(const AlbouyState& s, const ClusterPartition& part);

/// Largest in-block pair distance over all blocks; 0 when all blocks are
/// singletons.
double max_block_diameter(const AlbouyState& s, const ClusterPartition& part);

struct AdditivityRow {
    std::size_t k = 0;
    double k_error = 0.0;       ///< relative additivity error of K over pieces
    double i_error = 0.0;       ///< same for I
    double l_error = 0.0;       ///< same for L (vector norm)
    double v_remainder = 0.0;   ///< V(S) - sum of within-block potentials
    double grad_remainder = 0.0;///< mass norm of the cross-block gradient
    double min_centre_dist = 0.0;
};

/// K, I and L are exactly additive over the pieces (orthogonality); V and
/// grad V leave a cross-cluster remainder that decays with the inter-centre
/// distance. Decay exponents are fitted on a log-log grid over the rows.
struct AdditivityReport {
    std::vector<AdditivityRow> rows;
    TrendFit v_decay;     ///< remainder versus min centre distance, slope ~ -1
    TrendFit grad_decay;  ///< gradient remainder, slope ~ -2
};

AdditivityReport additivity_report(std::span<const AlbouyState> seq,
                                   const ClusterPartition& part);

/// Constructive cluster detection along a sequence: grow a cluster from a
/// seed body, merging any body whose liminf-distance surrogate (minimum over
/// the trailing `window` states of the distance to the cluster centre) stays
/// below threshold * (trailing median cluster diameter + 1); repeat on the
/// leftovers. Throws InconclusiveClustersError when the resulting partition
/// shows no factor-10 separation between intra- and inter-cluster scales.
ClusterPartition detect_clusters(std::span<const AlbouyState> seq, std::size_t window = 5,
                                 double threshold = 10.0);

struct BlockResidualSeries {
    std::vector<std::size_t> block;
    std::vector<double> residual_norms;
    std::vector<double> grad_norms;  ///< scale reference per index
    TrendFit trend;
};

/// Residual trends of the cluster projections, all evaluated against the SAME
/// multiplier sequence (criticality is inherited blockwise only for a common
/// multiplier sequence).
struct ClusterCriticalityReport {
    std::vector<BlockResidualSeries> blocks;
    std::vector<double> whole_residual_norms;
    TrendFit whole_trend;
};

ClusterCriticalityReport cluster_criticality(std::span<const AlbouyState> seq,
                                             const ClusterPartition& part,
                                             std::span<const Multiplier> multipliers);

} // namespace cpinf

#endif
