// Copyright 2026 The muxctl Authors
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

namespace muxctl {

struct Error : std::runtime_error {
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

#define MUXCTL_DEFINE_ERROR(NAME)                                   \
    struct NAME : Error {                                           \
        explicit NAME(const std::string& what) : Error(what) {}     \
    }

MUXCTL_DEFINE_ERROR(NonHermitianInput);
MUXCTL_DEFINE_ERROR(NoConvergence);
MUXCTL_DEFINE_ERROR(NormDrift);
MUXCTL_DEFINE_ERROR(NotUnitary);
MUXCTL_DEFINE_ERROR(ParseError);
MUXCTL_DEFINE_ERROR(ValidationError);
MUXCTL_DEFINE_ERROR(CompileError);
MUXCTL_DEFINE_ERROR(Infeasible);
MUXCTL_DEFINE_ERROR(MissingAssignment);
MUXCTL_DEFINE_ERROR(DimensionOverflow);
MUXCTL_DEFINE_ERROR(LabelAmbiguity);
MUXCTL_DEFINE_ERROR(DiabaticTrajectory);
MUXCTL_DEFINE_ERROR(NoSolution);
MUXCTL_DEFINE_ERROR(OutOfPerturbativeRegime);

#undef MUXCTL_DEFINE_ERROR

}  // namespace muxctl
