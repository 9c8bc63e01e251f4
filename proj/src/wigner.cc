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

#include "wigtel/wigner.h"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>
#include <string>

#include "wigtel/errors.h"

namespace wigtel {

namespace {

constexpr double NORMALIZATION_TOLERANCE = 1e-12;
constexpr double IMAGINARY_TOLERANCE = 1e-9;

std::size_t ipow(std::size_t base, std::size_t exp) {
    std::size_t r = 1;
    for (std::size_t i = 0; i < exp; i++) {
        r *= base;
    }
    return r;
}

/// Splits a packed index (party 0 most significant) into per-party base-n digits.
void unpack(std::size_t packed, std::size_t n, std::span<std::size_t> digits) {
    for (std::size_t i = digits.size(); i-- > 0;) {
        digits[i] = packed % n;
        packed /= n;
    }
}

/// data[.., o, ..] <- sum_in kernel[o * n + in] * data[.., in, ..] along one axis.
void transform_axis(
    std::vector<Complex> &data,
    std::size_t parties,
    std::size_t n,
    std::size_t axis,
    const std::vector<Complex> &kernel,
    std::vector<Complex> &column) {
    const std::size_t stride = ipow(n, parties - 1 - axis);
    const std::size_t block = stride * n;
    column.resize(n);
    for (std::size_t outer = 0; outer < data.size(); outer += block) {
        for (std::size_t inner = 0; inner < stride; inner++) {
            const std::size_t base = outer + inner;
            for (std::size_t in = 0; in < n; in++) {
                column[in] = data[base + in * stride];
            }
            for (std::size_t o = 0; o < n; o++) {
                Complex acc = 0;
                const Complex *row = &kernel[o * n];
                for (std::size_t in = 0; in < n; in++) {
                    acc += row[in] * column[in];
                }
                data[base + o * stride] = acc;
            }
        }
    }
}

/// Flat grid index of the point whose per-party coordinates are q[i], p[i].
std::size_t grid_index(std::span<const std::size_t> q, std::span<const std::size_t> p, std::size_t n) {
    std::size_t flat = 0;
    for (std::size_t i = 0; i < q.size(); i++) {
        flat = flat * n * n + p[i] * n + q[i];
    }
    return flat;
}

void require_single_party(const WignerGrid &grid, const char *what) {
    if (grid.parties() != 1) {
        throw std::invalid_argument(std::string(what) + " expects a single-party grid");
    }
}

}  // namespace

std::size_t grid_size(const PrimeDimension &dim, std::size_t parties) {
    std::size_t size = 1;
    for (std::size_t i = 0; i < parties; i++) {
        if (size > MAX_GRID_ENTRIES / dim.points()) {
            throw ConfigError(
                "a " + std::to_string(parties) + "-party grid at N=" + std::to_string(dim.value()) +
                " exceeds the supported grid size");
        }
        size *= dim.points();
    }
    return size;
}

double stable_sum(std::span<const double> values) {
    double sum = 0;
    double compensation = 0;
    for (double v : values) {
        double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) {
            compensation += (sum - t) + v;
        } else {
            compensation += (v - t) + sum;
        }
        sum = t;
    }
    return sum + compensation;
}

WignerGrid::WignerGrid(PrimeDimension dim, std::size_t parties, std::vector<double> values)
    : dim_(dim), parties_(parties), values_(std::move(values)) {
    if (parties_ == 0) {
        throw std::invalid_argument("a grid needs at least one party");
    }
    if (values_.size() != grid_size(dim_, parties_)) {
        throw std::invalid_argument(
            "grid has " + std::to_string(values_.size()) + " values, expected " +
            std::to_string(grid_size(dim_, parties_)));
    }
    double l1 = 0;
    for (double v : values_) {
        if (!std::isfinite(v)) {
            throw NumericalError("grid contains a non-finite value");
        }
        l1 += std::abs(v);
    }
    double total = stable_sum(values_);
    if (!(std::abs(total - 1.0) <= NORMALIZATION_TOLERANCE * std::max(1.0, l1))) {
        throw NumericalError("grid is not normalized (sum " + std::to_string(total) + ")");
    }
}

std::size_t WignerGrid::index_of(std::span<const PhasePoint> points) const {
    if (points.size() != parties_) {
        throw std::invalid_argument("index_of: need one point per party");
    }
    const std::size_t n = dim_.value();
    std::size_t flat = 0;
    for (const PhasePoint &pt : points) {
        if (pt.q >= n || pt.p >= n) {
            throw std::out_of_range("phase point out of range: " + to_string(pt));
        }
        flat = flat * n * n + point_offset(pt, dim_);
    }
    return flat;
}

std::vector<PhasePoint> WignerGrid::points_of(std::size_t flat) const {
    const std::size_t n = dim_.value();
    std::vector<PhasePoint> points(parties_);
    for (std::size_t i = parties_; i-- > 0;) {
        std::size_t off = flat % (n * n);
        flat /= n * n;
        points[i] = PhasePoint{static_cast<Residue>(off % n), static_cast<Residue>(off / n)};
    }
    return points;
}

double WignerGrid::at(std::span<const PhasePoint> points) const {
    return values_[index_of(points)];
}

double WignerGrid::sum() const {
    return stable_sum(values_);
}

WignerOperatorSet::WignerOperatorSet(PrimeDimension dim) : dim_(dim) {
    const std::uint32_t n = dim.value();
    columns_.resize(static_cast<std::size_t>(n) * n);
    for (Residue q = 0; q < n; q++) {
        for (Residue r = 0; r < n; r++) {
            columns_[static_cast<std::size_t>(q) * n + r] = dim.sub(dim.add(q, q), r);
        }
    }
    phases_.resize(n);
    for (Residue k = 0; k < n; k++) {
        phases_[k] = root_of_unity(k, dim);
    }
}

std::shared_ptr<const WignerOperatorSet> WignerOperatorSet::get(const PrimeDimension &dim) {
    static std::mutex mutex;
    static std::map<std::uint32_t, std::shared_ptr<const WignerOperatorSet>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto &slot = cache[dim.value()];
    if (!slot) {
        slot = std::make_shared<const WignerOperatorSet>(dim);
    }
    return slot;
}

Matrix WignerOperatorSet::dense(PhasePoint point) const {
    const std::uint32_t n = dim_.value();
    Matrix m = Matrix::Zero(n, n);
    for (Residue r = 0; r < n; r++) {
        m(r, column(point.q, r)) = entry(point, r);
    }
    return m;
}

Matrix wigner_operator(PhasePoint point, const PrimeDimension &dim) {
    if (point.q >= dim.value() || point.p >= dim.value()) {
        throw std::out_of_range("phase point out of range: " + to_string(point));
    }
    return WignerOperatorSet::get(dim)->dense(point);
}

std::vector<Complex> wigner_expectations(const PrimeDimension &dim, std::size_t parties, const Matrix &op) {
    const std::size_t n = dim.value();
    const std::size_t hs = hilbert_size(dim, parties);
    if (static_cast<std::size_t>(op.rows()) != hs || static_cast<std::size_t>(op.cols()) != hs) {
        throw std::invalid_argument("wigner_expectations: operator shape does not match N^parties");
    }
    auto ops = WignerOperatorSet::get(dim);
    std::vector<Complex> out(grid_size(dim, parties));
    const double scale = 1.0 / static_cast<double>(hs);

    std::vector<std::size_t> q(parties), r(parties), p(parties);
    std::vector<Complex> g(hs), column, kernel(n * n);
    for (std::size_t qi = 0; qi < hs; qi++) {
        unpack(qi, n, q);
        // g(r) = op(s(r), r), where s_i = 2 q_i - r_i is the only column A(q_i, .) fills in row r_i.
        for (std::size_t ri = 0; ri < hs; ri++) {
            unpack(ri, n, r);
            std::size_t si = 0;
            for (std::size_t i = 0; i < parties; i++) {
                si = si * n + ops->column(static_cast<Residue>(q[i]), static_cast<Residue>(r[i]));
            }
            g[ri] = op(static_cast<Eigen::Index>(si), static_cast<Eigen::Index>(ri));
        }
        for (std::size_t axis = 0; axis < parties; axis++) {
            for (std::size_t pp = 0; pp < n; pp++) {
                for (std::size_t rr = 0; rr < n; rr++) {
                    kernel[pp * n + rr] = ops->entry(
                        PhasePoint{static_cast<Residue>(q[axis]), static_cast<Residue>(pp)}, static_cast<Residue>(rr));
                }
            }
            transform_axis(g, parties, n, axis, kernel, column);
        }
        for (std::size_t pi = 0; pi < hs; pi++) {
            unpack(pi, n, p);
            out[grid_index(q, p, n)] = scale * g[pi];
        }
    }
    return out;
}

WignerGrid to_wigner(const DensityMatrix &state) {
    std::vector<Complex> raw = wigner_expectations(state.dim(), state.parties(), state.matrix());
    std::vector<double> values(raw.size());
    double worst = 0;
    for (std::size_t i = 0; i < raw.size(); i++) {
        worst = std::max(worst, std::abs(raw[i].imag()));
        values[i] = raw[i].real();
    }
    if (worst > IMAGINARY_TOLERANCE) {
        throw NonHermitianInput("Wigner transform has imaginary residue " + std::to_string(worst));
    }
    return WignerGrid(state.dim(), state.parties(), std::move(values));
}

DensityMatrix from_wigner(const WignerGrid &grid) {
    const PrimeDimension &dim = grid.dim();
    const std::size_t n = dim.value();
    const std::size_t parties = grid.parties();
    const std::size_t hs = hilbert_size(dim, parties);
    auto ops = WignerOperatorSet::get(dim);

    std::vector<Complex> kernel(n * n);
    for (std::size_t d = 0; d < n; d++) {
        for (std::size_t pp = 0; pp < n; pp++) {
            kernel[d * n + pp] = ops->phase(dim.mul(static_cast<Residue>(pp), static_cast<Residue>(d)));
        }
    }

    Matrix rho = Matrix::Zero(static_cast<Eigen::Index>(hs), static_cast<Eigen::Index>(hs));
    std::vector<std::size_t> q(parties), p(parties), d(parties);
    std::vector<Complex> h(hs), column;
    for (std::size_t qi = 0; qi < hs; qi++) {
        unpack(qi, n, q);
        for (std::size_t pi = 0; pi < hs; pi++) {
            unpack(pi, n, p);
            h[pi] = grid[grid_index(q, p, n)];
        }
        // h(q, d) = sum_p W(q, p) e^{2 pi i p.d / N}
        for (std::size_t axis = 0; axis < parties; axis++) {
            transform_axis(h, parties, n, axis, kernel, column);
        }
        // rho(r, s) = h(q, r - s) with r = q + d/2 and s = q - d/2 per party.
        for (std::size_t di = 0; di < hs; di++) {
            unpack(di, n, d);
            std::size_t ri = 0;
            std::size_t si = 0;
            for (std::size_t i = 0; i < parties; i++) {
                Residue half = dim.half(static_cast<Residue>(d[i]));
                ri = ri * n + dim.add(static_cast<Residue>(q[i]), half);
                si = si * n + dim.sub(static_cast<Residue>(q[i]), half);
            }
            rho(static_cast<Eigen::Index>(ri), static_cast<Eigen::Index>(si)) = h[di];
        }
    }
    rho = (0.5 * (rho + rho.adjoint())).eval();
    return DensityMatrix(dim, parties, std::move(rho));
}

std::vector<double> marginal_q(const WignerGrid &grid) {
    require_single_party(grid, "marginal_q");
    const std::uint32_t n = grid.dim().value();
    std::vector<double> out(n, 0.0);
    for (Residue p = 0; p < n; p++) {
        for (Residue q = 0; q < n; q++) {
            out[q] += grid[static_cast<std::size_t>(p) * n + q];
        }
    }
    return out;
}

std::vector<double> marginal_p(const WignerGrid &grid) {
    require_single_party(grid, "marginal_p");
    const std::uint32_t n = grid.dim().value();
    std::vector<double> out(n, 0.0);
    for (Residue p = 0; p < n; p++) {
        for (Residue q = 0; q < n; q++) {
            out[p] += grid[static_cast<std::size_t>(p) * n + q];
        }
    }
    return out;
}

WignerGrid partial_sum(const WignerGrid &grid, std::span<const std::size_t> keep) {
    const std::size_t k = grid.parties();
    std::vector<bool> kept(k, false);
    for (std::size_t party : keep) {
        if (party >= k || kept[party]) {
            throw std::invalid_argument("partial_sum: bad party list");
        }
        kept[party] = true;
    }
    if (keep.empty()) {
        throw std::invalid_argument("partial_sum: must keep at least one party");
    }
    std::size_t kept_count = 0;
    for (bool b : kept) {
        kept_count += b;
    }
    const std::size_t m = grid.dim().points();
    std::vector<double> out(grid_size(grid.dim(), kept_count), 0.0);
    std::vector<std::size_t> offsets(k);
    for (std::size_t flat = 0; flat < grid.size(); flat++) {
        unpack(flat, m, offsets);
        std::size_t target = 0;
        for (std::size_t i = 0; i < k; i++) {
            if (kept[i]) {
                target = target * m + offsets[i];
            }
        }
        out[target] += grid[flat];
    }
    return WignerGrid(grid.dim(), kept_count, std::move(out));
}

WignerGrid shift_grid(const WignerGrid &grid, Residue dq, Residue dp) {
    require_single_party(grid, "shift_grid");
    const PrimeDimension &dim = grid.dim();
    const std::uint32_t n = dim.value();
    dq = dim.reduce(dq);
    dp = dim.reduce(dp);
    std::vector<double> out(grid.size());
    for (Residue p = 0; p < n; p++) {
        for (Residue q = 0; q < n; q++) {
            out[static_cast<std::size_t>(p) * n + q] =
                grid[static_cast<std::size_t>(dim.sub(p, dp)) * n + dim.sub(q, dq)];
        }
    }
    return WignerGrid(dim, 1, std::move(out));
}

WignerGrid product(const WignerGrid &a, const WignerGrid &b) {
    if (!(a.dim() == b.dim())) {
        throw std::invalid_argument("product: dimension mismatch");
    }
    std::size_t total = grid_size(a.dim(), a.parties() + b.parties());
    std::vector<double> out;
    out.reserve(total);
    for (double va : a.values()) {
        for (double vb : b.values()) {
            out.push_back(va * vb);
        }
    }
    return WignerGrid(a.dim(), a.parties() + b.parties(), std::move(out));
}

double grid_overlap(const WignerGrid &a, const WignerGrid &b) {
    if (!(a.dim() == b.dim()) || a.parties() != b.parties()) {
        throw std::invalid_argument("grid_overlap: shape mismatch");
    }
    double acc = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        acc += a[i] * b[i];
    }
    return acc * static_cast<double>(hilbert_size(a.dim(), a.parties()));
}

double max_abs_diff(const WignerGrid &a, const WignerGrid &b) {
    if (!(a.dim() == b.dim()) || a.parties() != b.parties()) {
        throw std::invalid_argument("max_abs_diff: shape mismatch");
    }
    double worst = 0;
    for (std::size_t i = 0; i < a.size(); i++) {
        worst = std::max(worst, std::abs(a[i] - b[i]));
    }
    return worst;
}

}  // namespace wigtel
