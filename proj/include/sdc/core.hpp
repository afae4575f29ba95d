// Copyright 2026 The sdcmem Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

// Two-qubit states in the polarization basis (HH, HV, VH, VV), with Alice's
// qubit as the leading tensor factor. Entropies are in bits throughout.

#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "sdc/errors.hpp"
#include "sdc/numeric_text.hpp"

namespace sdc {

using Complex = std::complex<double>;
/// Decoherence factors (kappa_A, h) are carried as plain complex numbers.
using ComplexAmplitude = Complex;
using QubitMatrix = Eigen::Matrix2cd;
using TwoQubitMatrix = Eigen::Matrix4cd;
using TwoQubitVector = Eigen::Vector4cd;

namespace tolerance {
inline constexpr double kHermiticity = 1e-12;
inline constexpr double kTrace = 1e-12;
/// Eigenvalues in [-kEigenClamp, 0) are treated as zero; anything lower is
/// an invariant violation.
inline constexpr double kEigenClamp = 1e-10;
}  // namespace tolerance

/// Basis indices. H = 0, V = 1 on each qubit; index = 2 * alice + bob.
enum BasisIndex : int { HH = 0, HV = 1, VH = 2, VV = 3 };

enum class BellLabel { PhiPlus, PhiMinus, PsiPlus, PsiMinus };
enum class PauliLabel { I, X, Y, Z };
enum class Party { Alice, Bob };

inline constexpr std::array<BellLabel, 4> kBellLabels = {
    BellLabel::PhiPlus, BellLabel::PhiMinus, BellLabel::PsiPlus, BellLabel::PsiMinus};

constexpr int index_of(BellLabel label) noexcept { return static_cast<int>(label); }

inline std::string_view to_string(BellLabel label) {
  switch (label) {
    case BellLabel::PhiPlus: return "PHI_PLUS";
    case BellLabel::PhiMinus: return "PHI_MINUS";
    case BellLabel::PsiPlus: return "PSI_PLUS";
    case BellLabel::PsiMinus: return "PSI_MINUS";
  }
  return "?";
}

inline std::optional<BellLabel> bell_label_from_string(std::string_view name) {
  for (auto label : kBellLabels)
    if (to_string(label) == name) return label;
  return std::nullopt;
}

/// The Pauli Alice applies to |Phi+> to produce `label` (up to global phase).
constexpr PauliLabel encoding_pauli(BellLabel label) noexcept {
  switch (label) {
    case BellLabel::PhiPlus: return PauliLabel::I;
    case BellLabel::PhiMinus: return PauliLabel::Z;
    case BellLabel::PsiPlus: return PauliLabel::X;
    case BellLabel::PsiMinus: return PauliLabel::Y;
  }
  return PauliLabel::I;
}

/// The other Bell state in the same parity sector (Phi+ <-> Phi-, Psi+ <-> Psi-).
constexpr BellLabel sector_partner(BellLabel label) noexcept {
  switch (label) {
    case BellLabel::PhiPlus: return BellLabel::PhiMinus;
    case BellLabel::PhiMinus: return BellLabel::PhiPlus;
    case BellLabel::PsiPlus: return BellLabel::PsiMinus;
    case BellLabel::PsiMinus: return BellLabel::PsiPlus;
  }
  return label;
}

inline QubitMatrix pauli_matrix(PauliLabel p) {
  const Complex i{0.0, 1.0};
  QubitMatrix m;
  switch (p) {
    case PauliLabel::I: m << 1, 0, 0, 1; break;
    case PauliLabel::X: m << 0, 1, 1, 0; break;
    case PauliLabel::Y: m << 0, -i, i, 0; break;
    case PauliLabel::Z: m << 1, 0, 0, -1; break;
  }
  return m;
}

inline TwoQubitMatrix kron(const QubitMatrix& a, const QubitMatrix& b) {
  TwoQubitMatrix out;
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c) out.block<2, 2>(2 * r, 2 * c) = a(r, c) * b;
  return out;
}

inline TwoQubitVector bell_vector(BellLabel label) {
  const double amp = 1.0 / std::sqrt(2.0);
  TwoQubitVector v = TwoQubitVector::Zero();
  switch (label) {
    case BellLabel::PhiPlus: v[HH] = amp; v[VV] = amp; break;
    case BellLabel::PhiMinus: v[HH] = amp; v[VV] = -amp; break;
    case BellLabel::PsiPlus: v[HV] = amp; v[VH] = amp; break;
    case BellLabel::PsiMinus: v[HV] = amp; v[VH] = -amp; break;
  }
  return v;
}

/// Eigenvalues (ascending) of a Hermitian matrix with the clamp rule applied.
template <typename Derived>
Eigen::VectorXd clamped_eigenvalues(const Eigen::MatrixBase<Derived>& m) {
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic>> solver(
      m.template cast<Complex>(), Eigen::EigenvaluesOnly);
  Eigen::VectorXd ev = solver.eigenvalues();
  for (auto& v : ev) {
    if (v < -tolerance::kEigenClamp)
      throw InvariantError("density matrix has eigenvalue " + format_real(v) +
                           " below the clamp window");
    v = std::max(v, 0.0);
  }
  return ev;
}

/// Throws InvariantError unless `m` is Hermitian, unit trace and PSD within
/// the tolerances above.
template <typename Derived>
void check_density_invariants(const Eigen::MatrixBase<Derived>& m) {
  const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
  if (!(asym <= tolerance::kHermiticity))
    throw InvariantError("matrix is not Hermitian (max deviation " + format_real(asym) + ")");
  const Complex tr = m.trace();
  if (!(std::abs(tr - Complex{1.0, 0.0}) <= tolerance::kTrace))
    throw InvariantError("trace is " + format_real(tr.real()) + ", expected 1");
  clamped_eigenvalues(m);
}

/// A validated two-qubit density matrix.
class DensityMatrix {
 public:
  /// Validates `m` and stores its exact Hermitian part.
  static DensityMatrix from_matrix(const TwoQubitMatrix& m) {
    check_density_invariants(m);
    return DensityMatrix(0.5 * (m + m.adjoint()));
  }

  static DensityMatrix from_pure(const TwoQubitVector& psi) {
    const double norm = psi.norm();
    if (!(norm > 0.0)) throw DomainError("pure state vector has zero norm");
    const TwoQubitVector u = psi / norm;
    return from_matrix(u * u.adjoint());
  }

  static DensityMatrix maximally_mixed() {
    return DensityMatrix(TwoQubitMatrix::Identity() / 4.0);
  }

  const TwoQubitMatrix& matrix() const noexcept { return m_; }
  Complex operator()(int row, int col) const { return m_(row, col); }

  /// Clamped eigenvalues in ascending order.
  Eigen::Vector4d eigenvalues() const { return clamped_eigenvalues(m_); }

  /// Re tr(P rho) for a Hermitian observable or projector.
  double expectation(const TwoQubitMatrix& op) const { return (op * m_).trace().real(); }

  /// <psi| rho |psi> for a normalized pure state.
  double fidelity_with(const TwoQubitVector& psi) const {
    return (psi.adjoint() * m_ * psi)(0, 0).real();
  }

 private:
  explicit DensityMatrix(TwoQubitMatrix m) : m_(std::move(m)) {}

  TwoQubitMatrix m_;
};

inline DensityMatrix bell_state(BellLabel label) {
  return DensityMatrix::from_pure(bell_vector(label));
}

inline DensityMatrix product_state(const QubitMatrix& alice, const QubitMatrix& bob) {
  return DensityMatrix::from_matrix(kron(alice, bob));
}

/// U rho U^dagger with U = p (x) 1 for Alice or 1 (x) p for Bob.
inline DensityMatrix apply_pauli(const DensityMatrix& rho, PauliLabel p, Party party) {
  if (p == PauliLabel::I) return rho;
  const QubitMatrix id = QubitMatrix::Identity();
  const TwoQubitMatrix u =
      party == Party::Alice ? kron(pauli_matrix(p), id) : kron(id, pauli_matrix(p));
  return DensityMatrix::from_matrix(u * rho.matrix() * u.adjoint());
}

/// Reduced state of the party named by `keep`.
inline QubitMatrix partial_trace(const DensityMatrix& rho, Party keep) {
  QubitMatrix out = QubitMatrix::Zero();
  const auto& m = rho.matrix();
  for (int r = 0; r < 2; ++r)
    for (int c = 0; c < 2; ++c)
      for (int k = 0; k < 2; ++k)
        out(r, c) += keep == Party::Alice ? m(2 * r + k, 2 * c + k) : m(2 * k + r, 2 * k + c);
  return out;
}

/// -sum lambda log2 lambda over the clamped spectrum of any Hermitian,
/// unit-trace matrix.
template <typename Derived>
double von_neumann_entropy(const Eigen::MatrixBase<Derived>& rho) {
  check_density_invariants(rho);
  double s = 0.0;
  for (double lambda : clamped_eigenvalues(rho))
    if (lambda > 0.0) s -= lambda * std::log2(lambda);
  return std::max(s, 0.0);
}

inline double von_neumann_entropy(const DensityMatrix& rho) {
  return von_neumann_entropy(rho.matrix());
}

/// H(x) = -x log2 x - (1-x) log2(1-x), with H(0) = H(1) = 0.
inline double binary_entropy(double x) {
  if (!(x >= 0.0 && x <= 1.0))
    throw DomainError("binary_entropy: argument " + format_real(x) + " outside [0, 1]");
  double h = 0.0;
  if (x > 0.0) h -= x * std::log2(x);
  if (x < 1.0) h -= (1.0 - x) * std::log2(1.0 - x);
  return h;
}

/// Wootters concurrence.
///
/// The decreasing square roots of the eigenvalues of rho (Y(x)Y) rho* (Y(x)Y)
/// are the singular values of sqrt(rho) (Y(x)Y) sqrt(rho)*; the SVD route
/// keeps the vanishing ones at rounding level instead of at sqrt(eps).
inline double concurrence(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<TwoQubitMatrix> eig(rho.matrix());
  Eigen::Vector4d sqrt_ev;
  for (int i = 0; i < 4; ++i) sqrt_ev[i] = std::sqrt(std::max(eig.eigenvalues()[i], 0.0));
  const TwoQubitMatrix sqrt_rho =
      eig.eigenvectors() * sqrt_ev.cast<Complex>().asDiagonal() * eig.eigenvectors().adjoint();
  const QubitMatrix y = pauli_matrix(PauliLabel::Y);
  const TwoQubitMatrix yy = kron(y, y);
  const TwoQubitMatrix a = sqrt_rho * yy * sqrt_rho.conjugate();
  const Eigen::Vector4d sv = Eigen::JacobiSVD<TwoQubitMatrix>(a).singularValues();
  return std::clamp(sv[0] - sv[1] - sv[2] - sv[3], 0.0, 1.0);
}

/// log2 d + S(rho_B) - S(rho_AB) with d = 2.
inline double dense_coding_capacity(const DensityMatrix& rho) {
  return 1.0 + von_neumann_entropy(partial_trace(rho, Party::Bob)) - von_neumann_entropy(rho);
}

// Plain-text matrix format: four lines of four "re+imj" entries separated by
// a single space, 17 significant digits.

inline std::string format_complex(Complex z) {
  std::string out = format_real(z.real());
  out += std::signbit(z.imag()) ? '-' : '+';
  out += format_real(std::abs(z.imag()));
  out += 'j';
  return out;
}

inline std::optional<Complex> parse_complex(std::string_view token) {
  token = trim(token);
  if (token.size() < 2 || token.back() != 'j') return std::nullopt;
  token.remove_suffix(1);
  // The separating sign is the last '+'/'-' that does not start the token or
  // follow an exponent marker.
  std::size_t split = std::string_view::npos;
  for (std::size_t i = token.size(); i-- > 1;) {
    if ((token[i] == '+' || token[i] == '-') && token[i - 1] != 'e' && token[i - 1] != 'E') {
      split = i;
      break;
    }
  }
  if (split == std::string_view::npos) return std::nullopt;
  const auto re = parse_real(token.substr(0, split));
  const auto im = parse_real(token.substr(split + 1));
  if (!re || !im) return std::nullopt;
  return Complex{*re, token[split] == '-' ? -*im : *im};
}

inline std::string to_text(const DensityMatrix& rho) {
  std::string out;
  for (int r = 0; r < 4; ++r) {
    for (int c = 0; c < 4; ++c) {
      if (c) out += ' ';
      out += format_complex(rho(r, c));
    }
    out += '\n';
  }
  return out;
}

/// Parses the plain-text format; the result is validated like any other
/// DensityMatrix.
inline DensityMatrix density_matrix_from_text(std::string_view text) {
  TwoQubitMatrix m;
  std::istringstream in{std::string(text)};
  std::string line;
  int row = 0;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    if (row == 4) throw StructureError("density matrix text has more than 4 rows");
    std::istringstream fields(line);
    std::string token;
    int col = 0;
    while (fields >> token) {
      if (col == 4)
        throw StructureError("row " + std::to_string(row + 1) + " has more than 4 entries");
      const auto z = parse_complex(token);
      if (!z) throw StructureError("malformed complex entry '" + token + "'");
      m(row, col++) = *z;
    }
    if (col != 4) throw StructureError("row " + std::to_string(row + 1) + " has fewer than 4 entries");
    ++row;
  }
  if (row != 4) throw StructureError("density matrix text has " + std::to_string(row) + " rows");
  return DensityMatrix::from_matrix(m);
}

}  // namespace sdc
