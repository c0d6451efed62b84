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
#include "skidnav/error.hpp"

namespace skidnav {

const char* to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::Config: return "Config";
    case ErrorCode::Io: return "Io";
    case ErrorCode::IndexOutOfNeighborhood: return "IndexOutOfNeighborhood";
    case ErrorCode::DegeneratePoint: return "DegeneratePoint";
    case ErrorCode::EmptyScan: return "EmptyScan";
    case ErrorCode::NoKeyframes: return "NoKeyframes";
    case ErrorCode::DegenerateLine: return "DegenerateLine";
    case ErrorCode::DegeneratePlane: return "DegeneratePlane";
    case ErrorCode::InsufficientCorrespondences: return "InsufficientCorrespondences";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::PathExhausted: return "PathExhausted";
    case ErrorCode::FunnelBreach: return "FunnelBreach";
    case ErrorCode::EmptyRecord: return "EmptyRecord";
    case ErrorCode::DegenerateFit: return "DegenerateFit";
    case ErrorCode::BreachInTrace: return "BreachInTrace";
  }
  return "Unknown";
}

}  // namespace skidnav
