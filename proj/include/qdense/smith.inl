// Copyright 2026 The qdense Authors
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

#include <stdexcept>
#include <type_traits>

namespace qdense {

namespace smith_detail {

template <typename Scalar>
Scalar checked_sub_mul(Scalar a, Scalar q, Scalar b) {
    static_assert(std::is_integral_v<Scalar>, "smith_normal_form needs an integer scalar");
    Scalar prod;
    Scalar out;
    if (__builtin_mul_overflow(q, b, &prod) || __builtin_sub_overflow(a, prod, &out)) {
        throw std::overflow_error("smith_normal_form: integer overflow");
    }
    return out;
}

template <typename Scalar>
Scalar floor_div(Scalar a, Scalar b) {
    Scalar q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) {
        --q;
    }
    return q;
}

// row_dst -= q * row_src
template <typename Matrix, typename Scalar>
void row_sub(Matrix& m, Eigen::Index dst, Eigen::Index src, Scalar q) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
        m(dst, c) = checked_sub_mul(m(dst, c), q, m(src, c));
    }
}

template <typename Matrix, typename Scalar>
void col_sub(Matrix& m, Eigen::Index dst, Eigen::Index src, Scalar q) {
    for (Eigen::Index r = 0; r < m.rows(); ++r) {
        m(r, dst) = checked_sub_mul(m(r, dst), q, m(r, src));
    }
}

}  // namespace smith_detail

template <typename Scalar>
SmithDecomposition<Scalar> smith_normal_form(
    const Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>& m) {
    using Matrix = typename SmithDecomposition<Scalar>::Matrix;
    using smith_detail::col_sub;
    using smith_detail::floor_div;
    using smith_detail::row_sub;

    const Eigen::Index rows = m.rows();
    const Eigen::Index cols = m.cols();
    Matrix D = m;
    Matrix U = Matrix::Identity(rows, rows);
    Matrix V = Matrix::Identity(cols, cols);

    const Eigen::Index steps = std::min(rows, cols);
    for (Eigen::Index t = 0; t < steps; ++t) {
        bool empty = false;
        while (true) {
            // Smallest nonzero magnitude in the trailing block becomes the pivot.
            Eigen::Index pi = -1;
            Eigen::Index pj = -1;
            for (Eigen::Index i = t; i < rows; ++i) {
                for (Eigen::Index j = t; j < cols; ++j) {
                    Scalar v = D(i, j);
                    if (v != 0 && (pi < 0 || (v < 0 ? -v : v) < (D(pi, pj) < 0 ? -D(pi, pj) : D(pi, pj)))) {
                        pi = i;
                        pj = j;
                    }
                }
            }
            if (pi < 0) {
                empty = true;
                break;
            }
            D.row(t).swap(D.row(pi));
            U.row(t).swap(U.row(pi));
            D.col(t).swap(D.col(pj));
            V.col(t).swap(V.col(pj));

            bool dirty = false;
            const Scalar p = D(t, t);
            for (Eigen::Index i = t + 1; i < rows; ++i) {
                if (D(i, t) == 0) continue;
                Scalar q = floor_div(D(i, t), p);
                row_sub(D, i, t, q);
                row_sub(U, i, t, q);
                dirty = dirty || D(i, t) != 0;
            }
            for (Eigen::Index j = t + 1; j < cols; ++j) {
                if (D(t, j) == 0) continue;
                Scalar q = floor_div(D(t, j), p);
                col_sub(D, j, t, q);
                col_sub(V, j, t, q);
                dirty = dirty || D(t, j) != 0;
            }
            if (dirty) continue;

            // Enforce that the pivot divides the whole trailing block.
            bool divides = true;
            for (Eigen::Index i = t + 1; i < rows && divides; ++i) {
                for (Eigen::Index j = t + 1; j < cols; ++j) {
                    if (D(i, j) % p != 0) {
                        row_sub(D, t, i, Scalar{-1});
                        row_sub(U, t, i, Scalar{-1});
                        divides = false;
                        break;
                    }
                }
            }
            if (divides) break;
        }
        if (empty) break;
        if (D(t, t) < 0) {
            D.row(t) = -D.row(t);
            U.row(t) = -U.row(t);
        }
    }
    return {std::move(U), std::move(D), std::move(V)};
}

}  // namespace qdense
