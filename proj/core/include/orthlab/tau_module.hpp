#pragma once

#include <string>
#include <vector>

#include "orthlab/matrix.hpp"
#include "orthlab/series.hpp"

namespace orthlab {

struct CheckOutcome {
  bool ok = true;
  std::string witness;
};

enum class ModuleRing : uint8_t { lambda, lambda_anti };

/// Free module with a chosen lift of the involution acting on the standard
/// basis through tau_matrix U (column convention: the lift sends e_j to
/// sum_i U_ij e_i, composed with tau on coordinates).  Lifts of order two are
/// required: U * tau(U) = 1.  Modules tagged lambda_anti must have entries
/// free of the cyclotomic variable.
struct SemiLinearModule {
  ModuleRing ring = ModuleRing::lambda;
  size_t rank = 0;
  Matrix<IwasawaSeries> tau_matrix;

  const SeriesContext& context() const { return tau_matrix.at(0, 0).context(); }
};

CheckOutcome validate_semilinear(const SemiLinearModule& m, int32_t guard = kDefaultGuard);

/// Apply the chosen lift to a coordinate vector: U * tau(x).
std::vector<IwasawaSeries> apply_tau_lift(const SemiLinearModule& m,
                                          const std::vector<IwasawaSeries>& x);

/// Sign of a rank-one module over Lambda_anti: the lift's action on the fiber
/// at the trivial character, which must be +1 or -1 at working precision.
int module_sign(const SemiLinearModule& m, int32_t guard = kDefaultGuard);

/// Induced action on the top exterior power: multiplication by det(U).
IwasawaSeries det_semilinear(const SemiLinearModule& m);

enum class PairingTarget : uint8_t { lambda, gamma_cycl_lambda_anti };

/// Gram matrix of a pairing on the standard basis, G_ij = pi(e_i (x) e_j),
/// with the twisted slot evaluated through pi(m (x) mu n) = tau(mu) pi(m (x) n).
/// For the gamma_cycl_lambda_anti target the entries are coefficient series in
/// the anticyclotomic variable.
struct HermitianPairing {
  Matrix<IwasawaSeries> gram;
  PairingTarget target = PairingTarget::lambda;
};

/// pi(x (x) y) = x^T G tau(y) for untwisted coordinate vectors.
IwasawaSeries pairing_value(const HermitianPairing& pairing, const std::vector<IwasawaSeries>& x,
                            const std::vector<IwasawaSeries>& y);

/// Element-wise laws on all basis pairs:
/// pi(e_i (x) e_j) = tau(pi(e_j (x) e_i)) = pi(lift e_j (x) lift e_i).
CheckOutcome validate_hermitian(const HermitianPairing& pairing, const SemiLinearModule& m,
                                int32_t guard = kDefaultGuard);

/// Unit of the ring expressing the chosen isomorphism between the determinant
/// lines; feeds the discriminant.
struct TauGauge {
  IwasawaSeries unit;
};

CheckOutcome validate_gauge(const TauGauge& gauge);

/// Transform the whole structure by an invertible basis change B:
/// G -> B^T G tau(B), U -> B^{-1} U tau(B).  The gauge is kept; discriminants
/// move by the unit det(B) det(tau(B)).
struct BasisChange {
  Matrix<IwasawaSeries> b;
  Matrix<IwasawaSeries> b_inverse;
};

void change_basis(SemiLinearModule& m, HermitianPairing& pairing, const BasisChange& change);

// matrix helpers over the series ring
Matrix<IwasawaSeries> mat_mul(const Matrix<IwasawaSeries>& a, const Matrix<IwasawaSeries>& b);
Matrix<IwasawaSeries> mat_tau(const Matrix<IwasawaSeries>& a);
Matrix<IwasawaSeries> mat_identity(const SeriesContext& ctx, size_t n);

}  // namespace orthlab
