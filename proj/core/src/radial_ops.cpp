#include "polyfock/radial_ops.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "polyfock/errors.hpp"

namespace polyfock {

namespace {

void check_unit(std::complex<double> tau, const char* where) {
  if (std::abs(std::abs(tau) - 1.0) > 1e-12) {
    throw std::invalid_argument(std::string(where) + ": tau is not on the unit circle");
  }
}

std::complex<double> unit_power(std::complex<double> tau, int k) {
  if (k == 0) return {1.0, 0.0};
  return std::polar(1.0, k * std::arg(tau));
}

std::vector<int> diagonals(const BasisMatrix& s) {
  std::vector<int> out;
  for (const auto& idx : basis_indices(s.space, s.truncation)) out.push_back(idx.d());
  return out;
}

}  // namespace

const Eigen::MatrixXcd& RadialOperatorRep::block(int d) const {
  if (d < d_min || d > d_max()) {
    throw std::out_of_range("RadialOperatorRep: no block for d = " + std::to_string(d));
  }
  return blocks[static_cast<std::size_t>(d - d_min)];
}

int block_size(int n, int d) {
  if (d < 1 - n) throw std::invalid_argument("block_size: d < 1 - n");
  return std::min(n, n + d);
}

int max_covered_diagonal(int n, int truncation) { return truncation - n + 1; }

std::vector<std::complex<double>> default_rotation_samples() {
  return {{0.0, 1.0}, std::polar(1.0, 1.0), std::polar(1.0, std::sqrt(2.0))};
}

Eigen::VectorXcd rotation_diagonal(const SpaceId& space, int truncation, std::complex<double> tau) {
  check_unit(tau, "rotation_diagonal");
  const auto indices = basis_indices(space, truncation);
  Eigen::VectorXcd out(static_cast<Eigen::Index>(indices.size()));
  for (std::size_t i = 0; i < indices.size(); ++i) {
    out(static_cast<Eigen::Index>(i)) = unit_power(tau, -indices[i].d());
  }
  return out;
}

FockVector rotate_vector(const FockVector& v, std::complex<double> tau) {
  check_unit(tau, "rotate_vector");
  v.validate();
  FockVector out = v;
  for (auto& [idx, c] : out.coefficients) c *= unit_power(tau, -idx.d());
  return out;
}

BasisMatrix radialize_matrix(const BasisMatrix& s) {
  s.validate();
  const auto d = diagonals(s);
  BasisMatrix out = s;
  for (Eigen::Index j = 0; j < out.entries.rows(); ++j) {
    for (Eigen::Index i = 0; i < out.entries.cols(); ++i) {
      if (d[j] != d[i]) out.entries(j, i) = 0.0;
    }
  }
  return out;
}

BasisMatrix radialize_numeric(const BasisMatrix& s, const CircleRule& rule) {
  s.validate();
  if (rule.size < 1) throw std::invalid_argument("radialize_numeric: empty circle rule");
  BasisMatrix out = s;
  out.entries.setZero();
  for (int t = 0; t < rule.size; ++t) {
    const Eigen::VectorXcd r = rotation_diagonal(s.space, s.truncation, circle_point(t, rule.size));
    out.entries += r.asDiagonal() * s.entries * r.conjugate().asDiagonal();
  }
  out.entries /= static_cast<double>(rule.size);
  return out;
}

double off_block_mass(const BasisMatrix& s) {
  s.validate();
  const auto d = diagonals(s);
  double off = 0.0;
  for (Eigen::Index j = 0; j < s.entries.rows(); ++j) {
    for (Eigen::Index i = 0; i < s.entries.cols(); ++i) {
      if (d[j] != d[i]) off += std::norm(s.entries(j, i));
    }
  }
  const double total = s.entries.squaredNorm();
  return total == 0.0 ? 0.0 : std::sqrt(off / total);
}

double off_diagonal_mass(const Eigen::MatrixXcd& m) {
  const double total = m.squaredNorm();
  if (total == 0.0) return 0.0;
  const double diag = m.diagonal().squaredNorm();
  return std::sqrt(std::max(0.0, total - diag) / total);
}

double spectral_norm(const Eigen::MatrixXcd& m) {
  if (m.size() == 0) return 0.0;
  Eigen::BDCSVD<Eigen::MatrixXcd> svd(m);
  return svd.singularValues()(0);
}

RadialOperatorRep phi_n(const BasisMatrix& s, int d_max, double tol) {
  if (s.space.kind != SpaceKind::poly) throw std::invalid_argument("phi_n: S must act on F_n");
  s.validate();
  const int n = s.space.n;
  if (d_max < 1 - n || d_max > max_covered_diagonal(n, s.truncation)) {
    throw std::invalid_argument("phi_n: d_max = " + std::to_string(d_max) +
                                " is not covered by truncation " + std::to_string(s.truncation));
  }
  const double mass = off_block_mass(s);
  if (mass > tol) {
    throw NotRadialError("phi_n: off-block mass " + std::to_string(mass) + " exceeds tolerance");
  }
  RadialOperatorRep rep{n, 1 - n, s.truncation, {}};
  for (int d = 1 - n; d <= d_max; ++d) {
    const int size = block_size(n, d);
    const int start = std::max(0, -d);
    Eigen::MatrixXcd a(size, size);
    for (int j = 0; j < size; ++j) {
      const auto row = *basis_position(s.space, s.truncation, {d + start + j, start + j});
      for (int k = 0; k < size; ++k) {
        const auto col = *basis_position(s.space, s.truncation, {d + start + k, start + k});
        a(j, k) = s.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col));
      }
    }
    rep.blocks.push_back(std::move(a));
  }
  return rep;
}

BasisMatrix assemble_blocks(const RadialOperatorRep& rep, int truncation) {
  if (rep.d_min != 1 - rep.n) throw std::invalid_argument("assemble_blocks: d_min must be 1 - n");
  if (rep.d_max() > max_covered_diagonal(rep.n, truncation)) {
    throw std::invalid_argument("assemble_blocks: blocks up to d = " + std::to_string(rep.d_max()) +
                                " do not fit truncation " + std::to_string(truncation));
  }
  const SpaceId space{SpaceKind::poly, rep.n};
  BasisMatrix out = identity_matrix(space, truncation);
  out.entries.setZero();
  for (int d = rep.d_min; d <= rep.d_max(); ++d) {
    const auto& a = rep.block(d);
    const int size = block_size(rep.n, d);
    if (a.rows() != size || a.cols() != size) {
      throw std::invalid_argument("assemble_blocks: block " + std::to_string(d) + " has order " +
                                  std::to_string(a.rows()) + "x" + std::to_string(a.cols()) +
                                  ", expected " + std::to_string(size));
    }
    const int start = std::max(0, -d);
    for (int j = 0; j < size; ++j) {
      const auto row = *basis_position(space, truncation, {d + start + j, start + j});
      for (int k = 0; k < size; ++k) {
        const auto col = *basis_position(space, truncation, {d + start + k, start + k});
        out.entries(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(col)) = a(j, k);
      }
    }
  }
  return out;
}

DiagonalRep phi_true(const BasisMatrix& s, int p_max, double tol) {
  if (s.space.kind != SpaceKind::true_poly) {
    throw std::invalid_argument("phi_true: S must act on F_(n)");
  }
  s.validate();
  if (p_max < 0 || p_max > s.truncation) {
    throw std::invalid_argument("phi_true: p_max outside the truncation");
  }
  const double mass = off_diagonal_mass(s.entries);
  if (mass > tol) {
    throw NotRadialError("phi_true: off-diagonal mass " + std::to_string(mass) +
                         " exceeds tolerance");
  }
  DiagonalRep rep{s.space.n, s.truncation, {}};
  for (int p = 0; p <= p_max; ++p) rep.eigenvalues.push_back(s.entries(p, p));
  return rep;
}

BasisMatrix finite_rank_radial(int n, int truncation, const std::vector<FiniteRankTerm>& terms) {
  const SpaceId space{SpaceKind::poly, n};
  BasisMatrix out = identity_matrix(space, truncation);
  out.entries.setZero();
  const auto dim = out.entries.rows();
  auto to_vector = [&](const DiagonalVector& coeffs, int d, const char* name) {
    Eigen::VectorXcd v = Eigen::VectorXcd::Zero(dim);
    for (const auto& [idx, c] : coeffs) {
      if (idx.d() != d) {
        throw std::invalid_argument(std::string("finite_rank_radial: ") + name + " has (" +
                                    std::to_string(idx.p) + "," + std::to_string(idx.q) +
                                    ") off diagonal " + std::to_string(d));
      }
      const auto pos = basis_position(space, truncation, idx);
      if (!pos) throw std::invalid_argument("finite_rank_radial: index outside the truncated basis");
      v(static_cast<Eigen::Index>(*pos)) += c;
    }
    return v;
  };
  for (const auto& term : terms) {
    if (term.xi == 0.0) throw std::invalid_argument("finite_rank_radial: xi must be nonzero");
    const Eigen::VectorXcd u = to_vector(term.u, term.d, "u");
    const Eigen::VectorXcd v = to_vector(term.v, term.d, "v");
    out.entries += term.xi * v * u.adjoint();
  }
  return out;
}

RadialityReport is_radial(const BasisMatrix& s, const std::vector<std::complex<double>>& taus,
                          double tol) {
  s.validate();
  RadialityReport report;
  for (const auto& tau : taus) {
    const Eigen::VectorXcd r = rotation_diagonal(s.space, s.truncation, tau);
    const Eigen::MatrixXcd commutator =
        r.asDiagonal() * s.entries - s.entries * r.asDiagonal();
    report.max_commutator_norm = std::max(report.max_commutator_norm, spectral_norm(commutator));
  }
  report.off_block_mass = off_block_mass(s);
  report.radial = report.max_commutator_norm <= tol * std::max(1.0, spectral_norm(s.entries));
  return report;
}

}  // namespace polyfock
