// Copyright 2026 The entmeas authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#pragma once

#include <cstdio>
#include <string>

#include "entmeas/linalg.hpp"

namespace entmeas {

/// 17 significant digits: enough to round-trip binary64 exactly.
inline std::string fmt17(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x);
    return buf;
}

inline std::string fmt_complex(const cplx& z) {
    return "(" + fmt17(z.real()) + "," + fmt17(z.imag()) + ")";
}

template <int N>
std::string fmt_matrix(const Matrix<N>& m, const std::string& indent = "  ") {
    std::string out;
    for (int r = 0; r < N; ++r) {
        out += indent;
        for (int c = 0; c < N; ++c) {
            out += fmt_complex(m(r, c));
            if (c + 1 < N) out += " ";
        }
        out += "\n";
    }
    return out;
}

}  // namespace entmeas
