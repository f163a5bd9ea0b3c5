/*
 * qcmorph
 *
 * Copyright 2026 The qcmorph authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *    http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */
#pragma once

#include <Eigen/Core>

#include <complex>
#include <stdexcept>
#include <string>

namespace qcmorph {

template <typename Scalar>
constexpr Scalar pi = Scalar(3.14159265358979323846L);

template <typename Scalar>
using MatX3 = Eigen::Matrix<Scalar, Eigen::Dynamic, 3>;
template <typename Scalar>
using MatX2 = Eigen::Matrix<Scalar, Eigen::Dynamic, 2>;
template <typename Scalar>
using VecX = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;
template <typename Scalar>
using VecXc = Eigen::Matrix<std::complex<Scalar>, Eigen::Dynamic, 1>;

using MatX3d = MatX3<double>;
using MatX2d = MatX2<double>;
using MatX3i = Eigen::Matrix<int, Eigen::Dynamic, 3>;
using VecXd = Eigen::VectorXd;
using VecXi = Eigen::VectorXi;
using VecXcd = VecXc<double>;

/// Bad input: malformed files, broken topology, inconsistent landmarks.
/// The CLI maps this to exit code 1.
class ValidationError : public std::runtime_error {
public:
    explicit ValidationError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Numerical failure: singular systems, folds, non-convergence.
/// The CLI maps this to exit code 2.
class SolverError : public std::runtime_error {
public:
    explicit SolverError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace qcmorph
