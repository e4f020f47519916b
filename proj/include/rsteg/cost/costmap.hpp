#pragma once

#include <limits>

#include "rsteg/cost/juniward.hpp"
#include "rsteg/jpeg/image.hpp"
#include "rsteg/util/error.hpp"
#include "rsteg/util/plane.hpp"

namespace rsteg {

inline constexpr double kWetCost = std::numeric_limits<double>::infinity();

// Directional per-coefficient costs. When side information about the
// pre-quantization coefficient values is available, the change that moves a
// coefficient toward its unrounded value is discounted by alpha; the other
// direction keeps the symmetric cost.
struct AsymCostMap {
    Plane rho_plus;
    Plane rho_minus;
};

// `reference` is the unquantized DCT plane of the side-information image
// (same padded geometry as the cover). alpha in [0,1]; alpha = 1 restores the
// symmetric map.
inline AsymCostMap asymmetric_costs(const Plane& rho, const CoefImage& cover,
                                    const Plane& reference, double alpha) {
    if (alpha < 0.0 || alpha > 1.0) throw Error("asymmetric_costs: alpha out of [0,1]");
    if (reference.height != rho.height || reference.width != rho.width)
        throw Error("asymmetric_costs: reference size mismatch");
    AsymCostMap out;
    out.rho_plus = rho;
    out.rho_minus = rho;
    for (int r = 0; r < rho.height; ++r) {
        for (int c = 0; c < rho.width; ++c) {
            double q = cover.table.step(r % 8, c % 8);
            double x = cover.at(r, c);
            double ref_level = reference.at(r, c) / q;
            if (x < ref_level) out.rho_plus.at(r, c) *= alpha;
            if (x > ref_level) out.rho_minus.at(r, c) *= alpha;
            // x == ref_level keeps both directions at the symmetric cost
        }
    }
    return out;
}

// Modification cost of moving a de-quantized coefficient by distance d when a
// unit quantized change costs rho: per unit of de-quantized movement the
// distortion is rho/q, so the move costs (rho/q)*d.
inline double dm_cost(double rho, double q, double d) {
    if (q <= 0.0) throw Error("dm_cost: nonpositive quantization step");
    return rho / q * d;
}

} // namespace rsteg
