// Copyright 2026 The wigtel Authors
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

#include "wigtel/hilbert.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

#include "wigtel/errors.h"

namespace wigtel {

namespace {

constexpr double NORM_TOLERANCE = 1e-12;
constexpr double HERMITIAN_TOLERANCE = 1e-12;
constexpr double PSD_FLOOR = -1e-10;
constexpr double MIN_PROBABILITY = 1e-15;

Eigen::Index as_index(std::size_t k) {
    return static_cast<Eigen::Index>(k);
}

Matrix kron(const Matrix &a, const Matrix &b) {
    Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
    for (Eigen::Index i = 0; i < a.rows(); i++) {
        for (Eigen::Index j = 0; j < a.cols(); j++) {
            out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
        }
    }
    return out;
}

}  // namespace

Complex root_of_unity(std::int64_t k, const PrimeDimension &dim) {
    double angle = 2.0 * std::numbers::pi * dim.reduce(k) / dim.value();
    return std::polar(1.0, angle);
}

std::size_t hilbert_size(const PrimeDimension &dim, std::size_t parties) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < parties; i++) {
        n *= dim.value();
    }
    return n;
}

StateVector::StateVector(PrimeDimension dim, std::size_t parties, Vector amplitudes)
    : dim_(dim), parties_(parties), amplitudes_(std::move(amplitudes)) {
    if (parties_ == 0) {
        throw std::invalid_argument("a state needs at least one party");
    }
    if (static_cast<std::size_t>(amplitudes_.size()) != hilbert_size(dim_, parties_)) {
        throw std::invalid_argument("amplitude count does not match N^parties");
    }
    double norm2 = amplitudes_.squaredNorm();
    if (std::abs(norm2 - 1.0) > NORM_TOLERANCE) {
        throw NumericalError("state vector is not normalized (|psi|^2 = " + std::to_string(norm2) + ")");
    }
}

StateVector StateVector::normalized(PrimeDimension dim, std::size_t parties, Vector amplitudes) {
    double norm = amplitudes.norm();
    if (norm == 0 || !std::isfinite(norm)) {
        throw NumericalError("cannot normalize a zero or non-finite vector");
    }
    amplitudes /= norm;
    return StateVector(dim, parties, std::move(amplitudes));
}

Complex StateVector::inner(const StateVector &other) const {
    return amplitudes_.dot(other.amplitudes_);
}

DensityMatrix::DensityMatrix(PrimeDimension dim, std::size_t parties, Matrix entries)
    : dim_(dim), parties_(parties), entries_(std::move(entries)) {
    std::size_t n = hilbert_size(dim_, parties_);
    if (parties_ == 0 || static_cast<std::size_t>(entries_.rows()) != n ||
        static_cast<std::size_t>(entries_.cols()) != n) {
        throw std::invalid_argument("density matrix shape does not match N^parties");
    }
    double asym = (entries_ - entries_.adjoint()).cwiseAbs().maxCoeff();
    if (!(asym <= HERMITIAN_TOLERANCE)) {
        throw NonHermitianInput("density matrix is not Hermitian (deviation " + std::to_string(asym) + ")");
    }
    Complex tr = entries_.trace();
    if (!(std::abs(tr - 1.0) <= NORM_TOLERANCE)) {
        throw NumericalError("density matrix trace is not 1");
    }
}

DensityMatrix DensityMatrix::pure(const StateVector &state) {
    const Vector &v = state.amplitudes();
    Matrix m = v * v.adjoint();
    // Exact Hermiticity; the outer product is only Hermitian up to rounding.
    m = (0.5 * (m + m.adjoint())).eval();
    return DensityMatrix(state.dim(), state.parties(), std::move(m));
}

DensityMatrix DensityMatrix::maximally_mixed(PrimeDimension dim, std::size_t parties) {
    auto n = as_index(hilbert_size(dim, parties));
    Matrix m = Matrix::Identity(n, n) / static_cast<double>(n);
    return DensityMatrix(dim, parties, std::move(m));
}

double DensityMatrix::min_eigenvalue() const {
    Eigen::SelfAdjointEigenSolver<Matrix> solver(entries_, Eigen::EigenvaluesOnly);
    return solver.eigenvalues().minCoeff();
}

bool DensityMatrix::is_positive_semidefinite(double floor) const {
    return min_eigenvalue() >= floor;
}

const DensityMatrix &DensityMatrix::require_positive() const {
    double lo = min_eigenvalue();
    if (lo < PSD_FLOOR) {
        throw NumericalError("operator is not positive semidefinite (min eigenvalue " + std::to_string(lo) + ")");
    }
    return *this;
}

double DensityMatrix::purity() const {
    return overlap(*this, *this);
}

DensityMatrix tensor(const DensityMatrix &a, const DensityMatrix &b) {
    if (!(a.dim() == b.dim())) {
        throw std::invalid_argument("tensor: dimension mismatch");
    }
    return DensityMatrix(a.dim(), a.parties() + b.parties(), kron(a.matrix(), b.matrix()));
}

DensityMatrix partial_trace(const DensityMatrix &rho, std::span<const std::size_t> keep) {
    const std::size_t k = rho.parties();
    const std::size_t n = rho.dim().value();
    std::vector<bool> kept(k, false);
    for (std::size_t party : keep) {
        if (party >= k || kept[party]) {
            throw std::invalid_argument("partial_trace: bad party list");
        }
        kept[party] = true;
    }
    if (keep.empty()) {
        throw std::invalid_argument("partial_trace: must keep at least one party");
    }
    std::vector<std::size_t> kept_parties, traced_parties;
    for (std::size_t i = 0; i < k; i++) {
        (kept[i] ? kept_parties : traced_parties).push_back(i);
    }
    // Stride of party i in the full index; party 0 is most significant.
    std::vector<std::size_t> stride(k);
    std::size_t s = 1;
    for (std::size_t i = k; i-- > 0;) {
        stride[i] = s;
        s *= n;
    }
    auto scatter = [&](std::size_t packed, const std::vector<std::size_t> &parties) {
        std::size_t full = 0;
        for (std::size_t j = parties.size(); j-- > 0;) {
            full += (packed % n) * stride[parties[j]];
            packed /= n;
        }
        return full;
    };
    std::size_t kept_size = hilbert_size(rho.dim(), kept_parties.size());
    std::size_t traced_size = hilbert_size(rho.dim(), traced_parties.size());
    std::vector<std::size_t> kept_offsets(kept_size), traced_offsets(traced_size);
    for (std::size_t i = 0; i < kept_size; i++) {
        kept_offsets[i] = scatter(i, kept_parties);
    }
    for (std::size_t t = 0; t < traced_size; t++) {
        traced_offsets[t] = scatter(t, traced_parties);
    }
    const Matrix &m = rho.matrix();
    Matrix out = Matrix::Zero(as_index(kept_size), as_index(kept_size));
    for (std::size_t i = 0; i < kept_size; i++) {
        for (std::size_t j = 0; j < kept_size; j++) {
            Complex acc = 0;
            for (std::size_t t : traced_offsets) {
                acc += m(as_index(kept_offsets[i] + t), as_index(kept_offsets[j] + t));
            }
            out(as_index(i), as_index(j)) = acc;
        }
    }
    return DensityMatrix(rho.dim(), kept_parties.size(), std::move(out));
}

double overlap(const DensityMatrix &a, const DensityMatrix &b) {
    if (a.size() != b.size()) {
        throw std::invalid_argument("overlap: size mismatch");
    }
    // Tr(ab) = sum_ij a_ij b_ji
    return (a.matrix().array() * b.matrix().transpose().array()).sum().real();
}

StateVector position_eigenstate(Residue k, const PrimeDimension &dim) {
    Vector v = Vector::Zero(dim.value());
    v[dim.reduce(k)] = 1.0;
    return StateVector(dim, 1, std::move(v));
}

StateVector momentum_eigenstate(Residue l, const PrimeDimension &dim) {
    const std::uint32_t n = dim.value();
    Vector v(n);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint32_t k = 0; k < n; k++) {
        v[k] = scale * root_of_unity(static_cast<std::int64_t>(k) * l, dim);
    }
    return StateVector(dim, 1, std::move(v));
}

StateVector bell_state(Residue p, Residue x, const PrimeDimension &dim) {
    const std::uint32_t n = dim.value();
    Vector v = Vector::Zero(static_cast<Eigen::Index>(n) * n);
    double scale = 1.0 / std::sqrt(static_cast<double>(n));
    for (std::uint32_t k = 0; k < n; k++) {
        Residue second = dim.sub(k, dim.reduce(x));
        v[static_cast<Eigen::Index>(k) * n + second] = scale * root_of_unity(static_cast<std::int64_t>(k) * p, dim);
    }
    return StateVector(dim, 2, std::move(v));
}

StateVector epr_state(const PrimeDimension &dim) {
    return bell_state(0, 0, dim);
}

Matrix joint_position_difference(const PrimeDimension &dim) {
    const std::uint32_t n = dim.value();
    Matrix m = Matrix::Zero(static_cast<Eigen::Index>(n) * n, static_cast<Eigen::Index>(n) * n);
    for (std::uint32_t a = 0; a < n; a++) {
        for (std::uint32_t b = 0; b < n; b++) {
            Eigen::Index i = static_cast<Eigen::Index>(a) * n + b;
            m(i, i) = dim.sub(a, b);
        }
    }
    return m;
}

Matrix joint_momentum_sum(const PrimeDimension &dim) {
    const std::uint32_t n = dim.value();
    Matrix fourier(n, n);
    for (std::uint32_t l = 0; l < n; l++) {
        fourier.col(l) = momentum_eigenstate(l, dim).amplitudes();
    }
    Matrix f2 = kron(fourier, fourier);
    Vector eig(static_cast<Eigen::Index>(n) * n);
    for (std::uint32_t l = 0; l < n; l++) {
        for (std::uint32_t m = 0; m < n; m++) {
            eig[static_cast<Eigen::Index>(l) * n + m] = dim.add(l, m);
        }
    }
    return f2 * eig.asDiagonal() * f2.adjoint();
}

UnitaryCorrection::UnitaryCorrection(Residue x_shift, Residue p_shift, const PrimeDimension &dim)
    : dim_(dim), x_shift_(dim.reduce(x_shift)), p_shift_(dim.reduce(p_shift)) {
    const std::uint32_t n = dim.value();
    matrix_ = Matrix::Zero(n, n);
    for (std::uint32_t k = 0; k < n; k++) {
        matrix_(k, dim.sub(k, x_shift_)) = root_of_unity(static_cast<std::int64_t>(p_shift_) * k, dim);
    }
}

DensityMatrix UnitaryCorrection::apply(const DensityMatrix &rho) const {
    if (rho.parties() != 1 || !(rho.dim() == dim_)) {
        throw std::invalid_argument("UnitaryCorrection::apply expects a single-party state of matching dimension");
    }
    Matrix out = matrix_ * rho.matrix() * matrix_.adjoint();
    out = (0.5 * (out + out.adjoint())).eval();
    return DensityMatrix(dim_, 1, std::move(out));
}

UnitaryCorrection bennett_unitary(Residue x2, Residue p1, const PrimeDimension &dim) {
    return UnitaryCorrection(x2, p1, dim);
}

namespace {

struct Amplitude {
    std::size_t a;
    std::size_t b;
    Complex value;
};

/// Unnormalized receiver operator for a sharp Bell outcome.
Matrix project_receiver(const DensityMatrix &input, const DensityMatrix &resource, Residue x2, Residue p1) {
    const PrimeDimension &dim = input.dim();
    const std::size_t n = dim.value();
    StateVector bell = bell_state(p1, x2, dim);
    std::vector<Amplitude> support;
    for (std::size_t a = 0; a < n; a++) {
        for (std::size_t b = 0; b < n; b++) {
            Complex v = bell[a * n + b];
            if (v != Complex(0)) {
                support.push_back({a, b, v});
            }
        }
    }
    const Matrix &in = input.matrix();
    const Matrix &res = resource.matrix();
    Matrix out = Matrix::Zero(as_index(n), as_index(n));
    for (const auto &left : support) {
        for (const auto &right : support) {
            Complex w = std::conj(left.value) * right.value * in(as_index(left.a), as_index(right.a));
            if (w == Complex(0)) {
                continue;
            }
            out += w * res.block(as_index(left.b * n), as_index(right.b * n), as_index(n), as_index(n));
        }
    }
    return out;
}

}  // namespace

OracleResult oracle_teleport(
    const DensityMatrix &input,
    const DensityMatrix &resource,
    const BellOutcome &outcome,
    std::span<const double> filter) {
    const PrimeDimension &dim = input.dim();
    if (input.parties() != 1 || resource.parties() != 2 || !(resource.dim() == dim)) {
        throw std::invalid_argument("oracle_teleport: expects a 1-party input and a 2-party resource");
    }
    const std::size_t n = dim.value();
    Matrix acc;
    if (filter.empty()) {
        acc = project_receiver(input, resource, dim.reduce(outcome.x2), dim.reduce(outcome.p1));
    } else {
        if (filter.size() != n * n) {
            throw std::invalid_argument("oracle_teleport: filter must have N^2 weights");
        }
        acc = Matrix::Zero(as_index(n), as_index(n));
        for (std::size_t dp = 0; dp < n; dp++) {
            for (std::size_t dq = 0; dq < n; dq++) {
                double w = filter[dp * n + dq];
                if (w == 0) {
                    continue;
                }
                acc += w * project_receiver(
                               input,
                               resource,
                               dim.add(dim.reduce(outcome.x2), static_cast<Residue>(dq)),
                               dim.add(dim.reduce(outcome.p1), static_cast<Residue>(dp)));
            }
        }
    }
    double probability = acc.trace().real();
    if (!(probability > MIN_PROBABILITY)) {
        throw ZeroProbability("Bell outcome " + to_string(PhasePoint{outcome.x2, outcome.p1}) + " has zero probability");
    }
    Matrix conditional = acc / probability;
    conditional = (0.5 * (conditional + conditional.adjoint())).eval();
    return {probability, DensityMatrix(dim, 1, std::move(conditional))};
}

OracleResult oracle_teleport(const DensityMatrix &input, const BellOutcome &outcome) {
    return oracle_teleport(input, DensityMatrix::pure(epr_state(input.dim())), outcome);
}

StateVector random_pure_state(const PrimeDimension &dim, std::size_t parties, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    Vector v(as_index(hilbert_size(dim, parties)));
    for (Eigen::Index i = 0; i < v.size(); i++) {
        double re = gauss(rng);
        double im = gauss(rng);
        v[i] = Complex(re, im);
    }
    return StateVector::normalized(dim, parties, std::move(v));
}

DensityMatrix random_density_matrix(const PrimeDimension &dim, std::size_t parties, std::mt19937_64 &rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    auto n = as_index(hilbert_size(dim, parties));
    Matrix g(n, n);
    for (Eigen::Index i = 0; i < n; i++) {
        for (Eigen::Index j = 0; j < n; j++) {
            double re = gauss(rng);
            double im = gauss(rng);
            g(i, j) = Complex(re, im);
        }
    }
    Matrix m = g * g.adjoint();
    m /= m.trace().real();
    m = (0.5 * (m + m.adjoint())).eval();
    return DensityMatrix(dim, parties, std::move(m));
}

}  // namespace wigtel
