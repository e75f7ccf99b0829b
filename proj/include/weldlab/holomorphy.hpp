#pragma once
// Numerical holomorphy certification: one-complex-parameter families through
// the solver / welding / sewing pipeline, probed by Wirtinger finite
// differences. A family maps t to a scalar lambda(t); holomorphy shows up as
// |d lambda / d tbar| small against |d lambda / d t|.

#include <optional>
#include <string>
#include <vector>

#include "weldlab/grids.hpp"
#include "weldlab/sewing.hpp"

namespace weldlab {

enum class FamilyKind { marked_point, beltrami_path, rigging_path, synthetic };

// closed-form probes for testing the harness itself
enum class SyntheticForm { linear, cubic, conjugate };

struct FamilySpec {
    FamilyKind kind = FamilyKind::marked_point;
    double t_radius = 0.3;            // domain |t| <= t_radius
    std::optional<BeltramiField> nu;  // direction datum for the path kinds
    cpx probe{0.5, 0.0};              // evaluation point for beltrami_path
    int grid_n = 192;                 // solver resolution for the path kinds
    SyntheticForm synth = SyntheticForm::linear;
    SewOptions sew;                   // sewing knobs for the sew-based kinds
};

// canned instances used by the acceptance corpus and the CLI
[[nodiscard]] FamilySpec marked_point_family();
[[nodiscard]] FamilySpec beltrami_path_family();
[[nodiscard]] FamilySpec rigging_path_family();
[[nodiscard]] FamilySpec synthetic_family(SyntheticForm form);

// lambda(t): runs the family's full pipeline and extracts the probe scalar.
[[nodiscard]] cpx family_eval(const FamilySpec& spec, cpx t);

struct WirtingerPair {
    double d_t = 0.0;
    double d_tbar = 0.0;
    bool below_floor = false;  // stencil differences at roundoff scale
};

// central Wirtinger differences at step delta:
//   lambda_a = (l(t+d) - l(t-d)) / 2d,  lambda_b = (l(t+id) - l(t-id)) / 2d,
//   d_t = |(lambda_a - i lambda_b)/2|,  d_tbar = |(lambda_a + i lambda_b)/2|.
[[nodiscard]] WirtingerPair wirtinger_residual(const FamilySpec& spec, cpx t, double delta);

struct CRRow {
    cpx t;
    double d_t = 0.0;
    double d_tbar = 0.0;
};

struct CRReport {
    std::vector<CRRow> rows;          // one per grid point, t-ordered
    double delta = 1e-3;
    double ratio = 0.0;               // max over rows of d_tbar / max(d_t, floor)
    WirtingerPair richardson;         // recheck at delta/2 on the middle grid point
    std::string warning;              // nonempty when differences hit the noise floor
};

inline constexpr double kProbeFloor = 1e-12;

// 3x3 grid {-s, 0, s}^2, row-major, the default acceptance t-sample set.
[[nodiscard]] std::vector<cpx> square_grid3(double s);

[[nodiscard]] CRReport holomorphy_report(const FamilySpec& spec, const std::vector<cpx>& grid,
                                         double delta = 1e-3);

}  // namespace weldlab
