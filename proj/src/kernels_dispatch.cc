// Copyright 2026 The qdesign Authors
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

#include <cstdlib>
#include <string_view>

#include "qdesign/kernels.h"

namespace qdesign {
namespace kernels {

static const KernelTable &choose() {
    const char *forced = std::getenv("QDESIGN_KERNELS");
    if (forced != nullptr && std::string_view(forced) == "scalar") {
        return scalar_kernels();
    }
    if (const KernelTable *t = avx2_kernels()) {
        return *t;
    }
    return scalar_kernels();
}

const KernelTable &active_kernels() {
    static const KernelTable &table = choose();
    return table;
}

}  // namespace kernels
}  // namespace qdesign
