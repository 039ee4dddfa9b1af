// Copyright 2026 The vsic Authors
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

#include <cstdlib>
#include <string>

#include "vsic/simd/kernels.hpp"

namespace vsic::simd {

#if defined(VSIC_HAVE_AVX2)
const KernelTable* avx2_table();
#endif

const KernelTable* avx2_kernels() {
#if defined(VSIC_HAVE_AVX2)
  return avx2_table();
#else
  return nullptr;
#endif
}

bool isa_available(Isa isa) {
  switch (isa) {
    case Isa::scalar:
      return true;
    case Isa::avx2:
#if defined(VSIC_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
      __builtin_cpu_init();
      return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
      return false;
#endif
  }
  return false;
}

namespace {

const KernelTable& select() {
  if (const char* env = std::getenv("VSIC_SIMD")) {
    const std::string want(env);
    if (want == "scalar") return scalar_kernels();
    if (want == "avx2" && isa_available(Isa::avx2)) return *avx2_kernels();
  }
  if (isa_available(Isa::avx2)) return *avx2_kernels();
  return scalar_kernels();
}

}  // namespace

const KernelTable& active() {
  static const KernelTable& table = select();
  return table;
}

std::string_view isa_name(Isa isa) {
  return isa == Isa::avx2 ? "avx2" : "scalar";
}

}  // namespace vsic::simd
