#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "psdeg/lasserre.hpp"
#include "psdeg/ps_proof.hpp"

namespace psdeg {

struct CertificateReport {
  PsProof proof;
  // True when proof verifies exactly (zero residual).
  bool exact = false;
  // Max-norm of the exact residual of the floating-point certificate.
  double numeric_residual = 0.0;
  bool rationalization_attempted = false;
  std::string note;  // why rationalization failed, if it did
  ProofMeasures measures;
};

// Refutation Q |- -1 >= 0 from a refutable margin result. Without
// rationalize, the returned proof holds the floating-point roots converted
// exactly (it verifies only up to numeric_residual). Equality-only
// refutations are always exact. Throws ValidationError("no certificate")
// when the margin result is not a refutation.
CertificateReport extract_certificate(const ConstraintSystem& Q, const LasserreSdp& L,
                                      const MarginResult& margin, const LasserreOptions& opts,
                                      bool rationalize, std::int64_t denom_cap = 1000000);

// Certificate of p - eps >= 0 from a solved bound problem for p whose best
// bound exceeds eps. The proof target is p - eps literally.
CertificateReport extract_bound_certificate(const ConstraintSystem& Q, const LasserreSdp& L,
                                            const SdpSolution& sol, const Polynomial& p,
                                            const Rational& eps,
                                            const LasserreOptions& opts, bool rationalize,
                                            std::int64_t denom_cap = 1000000);

}  // namespace psdeg

namespace psdeg {

struct DegreeProbe {
  std::uint32_t two_d = 0;
  bool refutable = false;
  bool by_equalities = false;
  double margin = 0.0;
  int iterations = 0;
};

struct RefutationSearch {
  std::optional<std::uint32_t> degree;  // smallest refuting even degree
  // Absent when the refuting solve stopped at the iteration cap.
  std::optional<CertificateReport> certificate;
  std::vector<DegreeProbe> probes;
};

// Scans 2d = 2, 4, ..., d_max and stops at the first refuting degree.
RefutationSearch min_refutation_degree(const ConstraintSystem& Q, std::uint32_t d_max,
                                       const LasserreOptions& opts, bool rationalize = true,
                                       std::int64_t denom_cap = 1000000);

}  // namespace psdeg
