#include "txml/kernels/kernels.hpp"

#include <cstdio>
#include <cstdlib>
#include <string_view>

namespace txml::kernels {
namespace {

const Kernels* select_backend() {
    if (const char* env = std::getenv("TXML_KERNELS")) {
        const std::string_view choice(env);
        if (choice == "scalar") return &scalar_kernels();
        if (choice == "avx2") {
            if (const Kernels* k = avx2_kernels()) return k;
            std::fputs("txml: AVX2 kernels unavailable on this CPU, using scalar\n", stderr);
            return &scalar_kernels();
        }
        if (!choice.empty() && choice != "auto") {
            std::fprintf(stderr, "txml: unknown TXML_KERNELS value '%s', using auto\n", env);
        }
    }
    if (const Kernels* k = avx2_kernels()) return k;
    return &scalar_kernels();
}

}  // namespace

const Kernels& active_kernels() noexcept {
    static const Kernels* backend = select_backend();
    return *backend;
}

}  // namespace txml::kernels
