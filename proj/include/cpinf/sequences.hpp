#ifndef CPINF_SEQUENCES_HPP
#define CPINF_SEQUENCES_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cpinf/clusters.hpp"
#include "cpinf/relative_equilibria.hpp"

namespace cpinf {

/// Geometric schedule for the generated families: z_k = z0 * rho^k.
struct Schedule {
    double z0 = 20.0;
    double rho = 2.0;
    std::size_t count = 14;
};

enum class SequenceFamily { Custom, Horizontal, PlanarObstruction, ShrinkingPair };

struct SequenceMeta {
    SequenceFamily family = SequenceFamily::Custom;
    std::optional<Schedule> schedule;
    std::vector<double> scale;  ///< z_k per index; empty means fit trends vs index
    std::optional<ClusterPartition> partition;
    std::optional<std::pair<std::size_t, std::size_t>> pair;
    std::optional<std::size_t> singleton;
    double ell = 0.0;
};

/// A sequence of states, optionally with an attached multiplier sequence
/// (generators attach the analytic multipliers; user sequences are fitted).
struct StateSequence {
    std::vector<AlbouyState> states;
    std::optional<std::vector<Multiplier>> multipliers;
    SequenceMeta meta;
};

/// The two-cluster horizontal family: the attracting pair sits on its
/// circular relative equilibrium in the (x,y)-plane while the block centres
/// recede along the z-axis, the pair centre at (m_s / (m_i + m_j)) z_k and
/// the singleton at -z_k. Angular momentum is (0, 0, ell) for every k and the
/// analytic multiplier (0, 0, omega) accompanies the states.
StateSequence generate_horizontal(const BodySystemPtr& sys,
                                  std::pair<std::size_t, std::size_t> pair,
                                  std::size_t singleton, double ell, const Schedule& schedule);

/// Same cluster topology but with the centres receding inside the pair's
/// rotation plane (along x). The receding centres enter the velocity-slot
/// residual through |lambda| X, so no multiplier sequence makes this family
/// critical; it witnesses the absence of critical points at infinity in
/// planar problems. No multipliers attached (diagnostics fit them).
StateSequence generate_planar_obstruction(const BodySystemPtr& sys,
                                          std::pair<std::size_t, std::size_t> pair,
                                          std::size_t singleton, double ell,
                                          const Schedule& schedule);

/// A two-body pair shrunk homothetically by the dilation family s_k < 0:
/// positions scale by rho^{-k}, velocities by rho^{k/2}. For an attracting
/// pair the base state is the exact relative equilibrium and the analytic
/// multipliers omega * rho^{3k/2} are attached (a small sequence); for a
/// repelling pair the base is the circular profile with L_z = ell and
/// multipliers are left to the fitter.
StateSequence generate_shrinking_pair(const BodySystemPtr& sys,
                                      std::pair<std::size_t, std::size_t> pair, double ell,
                                      const Schedule& schedule);

/// Constant sequence repeating one state `count` times (e.g. an embedded
/// relative equilibrium with a spectator, which is not critical for the full
/// system).
StateSequence constant_sequence(const AlbouyState& s, std::size_t count);

struct DiagnosticsRow {
    std::size_t k = 0;
    double z = 0.0;             ///< schedule scale (or the index when absent)
    double residual_norm = 0.0;
    double grad_h_norm = 0.0;   ///< scale reference for relative criticality
    std::optional<double> H;
    std::optional<double> V;
    double K = 0.0;
    double I = 0.0;
    Vec3 L{};
    double I_z = 0.0;           ///< in multiplier coordinates
    double K_z = 0.0;
    double L_z = 0.0;
    Vec3 lambda{};
    double lambda_norm = 0.0;
    std::optional<double> ratio_kplusv;  ///< (K + mu V)^2 / (I + K)
    double min_pair_dist = 0.0;
    double max_pair_dist = 0.0;
    double min_centre_dist = 0.0;  ///< NaN without a partition
    double r_norm = 0.0;           ///< |R| in multiplier coordinates
    double gap_ii = 0.0;           ///< | sqrt(K_z) - |lambda| sqrt(I_z) | on the pair block
    double gap_iii = 0.0;          ///< | sqrt(K_z) - |L_z| / sqrt(I_z) | on the pair block
    bool collision = false;
    bool degenerate_multiplier = false;
};

struct SequenceDiagnostics {
    std::vector<DiagnosticsRow> rows;
    TrendFit residual_trend;
    TrendFit ratio_trend;
    TrendFit r_norm_trend;
    TrendFit gap_ii_trend;
    double max_l_drift = 0.0;  ///< max_k |L_k - L_0|
    /// Residual trend to zero, or residual at roundoff level relative to
    /// |grad H| on the trailing half (exactly critical constructed families
    /// have flat machine-epsilon residuals that defeat the slope rule).
    bool effectively_critical = false;
};

SequenceDiagnostics diagnose(const StateSequence& seq);

enum class Verdict {
    RelativeEquilibrium,
    Collision,
    CriticalPointAtInfinity,
    NotCritical,
    Inconclusive,
};

std::string verdict_name(Verdict v);

struct ClassifierOptions {
    double slope_threshold = 0.5;
    double relative_residual_floor = 1e-10;
    double l_drift_tolerance = 1e-9;
    std::size_t cluster_window = 5;
    double cluster_threshold = 10.0;
};

struct BlockAssessment {
    std::vector<std::size_t> block;
    bool re_like = false;
    double last_residual = 0.0;
};

struct Classification {
    Verdict verdict = Verdict::Inconclusive;
    bool residual_to_zero = false;
    bool diameter_bounded = false;
    bool min_dist_to_zero = false;
    bool v_to_minus_inf = false;
    bool h_to_minus_inf = false;
    bool h_convergent = false;
    bool l_constant = false;
    double l_drift = 0.0;
    std::optional<ClusterPartition> partition;
    std::vector<BlockAssessment> blocks;
    std::vector<std::string> notes;
};

/// Decision procedure over the fitted trends:
///   (a) residual not -> 0: NotCritical;
///   (b) bounded diameter, min pair distance -> 0, V -> -inf: Collision;
///   (c) bounded diameter, bounded away from collision: RelativeEquilibrium;
///   (d) >= 2 separating clusters, constant L, convergent H, every block a
///       relative equilibrium or singleton: CriticalPointAtInfinity;
///   (e) otherwise Inconclusive.
Classification classify(const StateSequence& seq, const SequenceDiagnostics& diag,
                        const ClassifierOptions& opts = {});

struct SmallSequenceReport {
    bool accepted = false;  ///< precondition: I decreasing to ~0
    std::string reason;
    bool critical = false;
    TrendFit i_trend;
    TrendFit h_trend;       ///< fitted on |H|
    TrendFit lambda_trend;
    bool h_to_minus_inf = false;
    bool lambda_to_inf = false;
    double residual_floor_ratio = 0.0;  ///< min_k residual / residual_0
};

/// Checks the small-sequence dichotomy: a critical shrinking sequence must
/// have H -> -inf and |lambda| -> inf; a repelling shrinking sequence is
/// never critical (its residual stays bounded away from zero).
SmallSequenceReport verify_small_sequence(const StateSequence& seq);

struct KCriticalBranch {
    bool hypothesis_met = false;
    bool conclusion_holds = false;
};

struct KCriticalReport {
    bool k_critical = false;  ///< residual of K alone tends to zero
    TrendFit residual_trend;
    TrendFit k_trend;
    TrendFit l_norm_trend;
    TrendFit iz_trend;
    bool k_bounded_away_zero = false;
    bool lz_bounded_away_zero = false;
    KCriticalBranch branch_a;  ///< K bounded away from 0  =>  |L| -> inf
    KCriticalBranch branch_b;  ///< L_z bounded away from 0 =>  K -> 0 and I_z -> 0
    bool k_to_zero = false;
    std::string status;
};

/// Treats the sequence as a critical sequence of K alone (V set to zero) and
/// checks the two estimate branches.
KCriticalReport verify_k_critical(const StateSequence& seq);

} // namespace cpinf

#endif
