// SPDX-License-Identifier: Apache-2.0
#pragma once

#include "binet/qmath.hpp"

namespace binet {

// Which Bell state the pure-state family passes through at eta = 1/2.
enum class BellBase { PhiPlus, PsiMinus };

// One source: visibility-weighted mixture of a non-maximally entangled pure
// state with white noise,  v |psi_eta><psi_eta| + (1-v)/4 I.
struct SourceSpec {
    double eta = 0.5;
    double visibility = 1.0;
    BellBase base = BellBase::PhiPlus;
};

// sqrt(eta)|00> + sqrt(1-eta)|11>
CVec nme_pure(double eta);

// PhiPlus: as above. PsiMinus: sqrt(eta)|01> - sqrt(1-eta)|10>, the natural
// singlet-based family (equals |psi-> at eta = 1/2).
CVec nme_pure(double eta, BellBase base);

// 4x4 density matrix for the spec; Hermitian, unit trace, PSD.
CMat source_state(const SourceSpec& spec);

} // namespace binet
