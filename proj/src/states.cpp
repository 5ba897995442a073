// SPDX-License-Identifier: Apache-2.0

#include "binet/states.hpp"

#include <cmath>

namespace binet {

CVec nme_pure(double eta) { return nme_pure(eta, BellBase::PhiPlus); }

CVec nme_pure(double eta, BellBase base) {
    if (eta < 0.0 || eta > 1.0) throw ParamError("nme_pure: eta must lie in [0,1]");
    CVec v(4);
    if (base == BellBase::PhiPlus) {
        v[0] = std::sqrt(eta);
        v[3] = std::sqrt(1.0 - eta);
    } else {
        v[1] = std::sqrt(eta);
        v[2] = -std::sqrt(1.0 - eta);
    }
    return v;
}

CMat source_state(const SourceSpec& spec) {
    if (spec.visibility < 0.0 || spec.visibility > 1.0)
        throw ParamError("source_state: visibility must lie in [0,1]");
    const CMat pure = outer(nme_pure(spec.eta, spec.base));
    return add_scaled(spec.visibility, pure, (1.0 - spec.visibility) / 4.0,
                      CMat::identity(4));
}

} // namespace binet
