// Copyright 2026 The dbmatch Authors
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

#pragma once

#include <stdexcept>
#include <string>

namespace dbmatch {

// Bad model, plan or input data. The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A detection or matching algorithm could not produce an answer for the
// given data. Experiments count these as error events; the CLI maps them to
// exit code 3.
class AlgorithmError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The running Hamming distances show no two-component binomial mixture.
class DegenerateMixture : public AlgorithmError {
 public:
  using AlgorithmError::AlgorithmError;
};

// More than one row of a deviation column crossed the outlier threshold.
class MisdetectionError : public AlgorithmError {
 public:
  using AlgorithmError::AlgorithmError;
};

// Every alphabet remapping was rejected.
class NoUsefulRemapping : public AlgorithmError {
 public:
  using AlgorithmError::AlgorithmError;
};

// Replica flags and retained columns disagree on the number of runs.
class InconsistentDetection : public AlgorithmError {
 public:
  using AlgorithmError::AlgorithmError;
};

}  // namespace dbmatch
