/*
 Copyright 2026 The skidnav Authors

 Licensed under the Apache License, Version 2.0 (the "License");
 you may not use this file except in compliance with the License.
 You may obtain a copy of the License at

      https://www.apache.org/licenses/LICENSE-2.0

 Unless required by applicable law or agreed to in writing, software
 distributed under the License is distributed on an "AS IS" BASIS,
 WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 See the License for the specific language governing permissions and
 limitations under the License.
*/
#ifndef SKIDNAV_ERROR_HPP
#define SKIDNAV_ERROR_HPP

#include <stdexcept>
#include <string>

namespace skidnav {

// Every failure the library reports carries one of these codes. The C API
// maps them one-to-one onto skn_status values.
enum class ErrorCode {
  InvalidArgument,
  Config,
  Io,
  // lidar odometry
  IndexOutOfNeighborhood,
  DegeneratePoint,
  EmptyScan,
  NoKeyframes,
  DegenerateLine,
  DegeneratePlane,
  InsufficientCorrespondences,
  NonConvergence,
  // path following
  PathExhausted,
  // control / simulation
  FunnelBreach,
  // metrics
  EmptyRecord,
  DegenerateFit,
  BreachInTrace,
};

const char* to_string(ErrorCode code) noexcept;

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, what);
}

}  // namespace skidnav

#endif  // SKIDNAV_ERROR_HPP
