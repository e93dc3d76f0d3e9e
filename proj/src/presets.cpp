#include "catcode/presets.hpp"

#include "catcode/errors.hpp"

namespace catcode {

namespace {

std::vector<GaussInt> gauss_mods(std::initializer_list<std::pair<int, int>> parts) {
    std::vector<GaussInt> v;
    for (auto [re, im] : parts) v.push_back(GaussInt{re, im});
    return v;
}

constexpr std::uint64_t kCjkClasses = 21901;     // 181^2 covers it with k=2
constexpr std::uint64_t kCjkCharacters = 20901;  // distinct characters in the source set
constexpr std::uint64_t kUserIds = 6040;
constexpr std::uint64_t kMovieIds = 3952;

} // namespace

const std::vector<PresetInfo>& preset_list() {
    static const std::vector<PresetInfo> list = {
        {"cjk-poly-2", "polynomial code, p=181, k=2, 2 sites", Scheme::polynomial, kCjkClasses},
        {"cjk-poly-6", "polynomial code, p=181, k=2, 6 sites", Scheme::polynomial, kCjkClasses},
        {"cjk-remainder-2", "remainder code, moduli {173,191}", Scheme::remainder, kCjkClasses},
        {"cjk-remainder-6", "remainder code, moduli {173,191,157,181,193,199}", Scheme::remainder, kCjkClasses},
        {"cjk-gauss-2", "Gaussian code, moduli {10+9i,10-9i}", Scheme::gauss, kCjkClasses},
        {"cjk-gauss-6", "Gaussian code, moduli {10+-9i,13+-2i,12+-7i}", Scheme::gauss, kCjkClasses},
        {"cjk-ecoc-15", "15-bit binary code over the padded id range", Scheme::ecoc, kCjkClasses},
        {"cjk20901-ecoc-15", "15-bit binary code over the character count", Scheme::ecoc, kCjkCharacters},
        {"ml-coo-user", "582-bit cut-off one-hot for user ids", Scheme::coo, kUserIds},
        {"ml-coo-item", "474-bit cut-off one-hot for movie ids", Scheme::coo, kMovieIds},
        {"ml-rmp-user", "RM(12,1) punched to 582 bits, seed 1", Scheme::rmp, kUserIds},
        {"ml-rmp-item", "RM(11,1) punched to 474 bits, seed 1", Scheme::rmp, kMovieIds},
        {"method1-user", "two-hot remainder, moduli {289,293}", Scheme::remainder, kUserIds},
        {"method1-item", "two-hot remainder, moduli {235,239}", Scheme::remainder, kMovieIds},
        {"method2-user", "three-hot remainder, moduli {193,194,195}", Scheme::remainder, kUserIds},
        {"method2-item", "three-hot remainder, moduli {157,158,159}", Scheme::remainder, kMovieIds},
        {"method3-user", "six-hot polynomial over F_97", Scheme::polynomial, kUserIds},
        {"method3-item", "six-hot polynomial over F_73", Scheme::polynomial, kMovieIds},
        {"method4-user", "six-hot remainder, moduli {83,89,97,101,103,109}", Scheme::remainder, kUserIds},
        {"method4-item", "six-hot remainder, moduli {67,71,73,79,83,101}", Scheme::remainder, kMovieIds},
        {"method5-user", "six-hot Gaussian, moduli {8+-5i,9+-4i,10+i,10+3i}", Scheme::gauss, kUserIds},
        {"method5-item", "six-hot remainder, moduli {67,71,73,79,83,101}", Scheme::remainder, kMovieIds},
        {"method6-user", "15-hot remainder, moduli {19..67}", Scheme::remainder, kUserIds},
        {"method6-item", "14-hot remainder, moduli {17..53}", Scheme::remainder, kMovieIds},
    };
    return list;
}

bool is_preset(const std::string& name) {
    for (const auto& p : preset_list())
        if (p.name == name) return true;
    return false;
}

Codebook build_preset(const std::string& name) {
    using u64v = std::vector<std::uint64_t>;

    if (name == "cjk-poly-2") return build_polynomial_cc(kCjkClasses, 2, 181, 2);
    if (name == "cjk-poly-6") return build_polynomial_cc(kCjkClasses, 2, 181, 6);
    if (name == "cjk-remainder-2") return build_remainder_cc(kCjkClasses, 2, u64v{173, 191}, 2);
    if (name == "cjk-remainder-6") return build_remainder_cc(kCjkClasses, 2, u64v{173, 191, 157, 181, 193, 199}, 6);
    if (name == "cjk-gauss-2") return build_gauss_cc(kCjkClasses, 2, gauss_mods({{10, 9}, {10, -9}}), 2);
    if (name == "cjk-gauss-6")
        return build_gauss_cc(kCjkClasses, 2, gauss_mods({{10, 9}, {10, -9}, {13, 2}, {13, -2}, {12, 7}, {12, -7}}), 6);
    if (name == "cjk-ecoc-15") return build_ecoc(kCjkClasses, 15);
    if (name == "cjk20901-ecoc-15") return build_ecoc(kCjkCharacters, 15);

    if (name == "ml-coo-user") return build_coo(kUserIds, 582);
    if (name == "ml-coo-item") return build_coo(kMovieIds, 474);
    if (name == "ml-rmp-user") return build_rmp(kUserIds, 12, 582, 1);
    if (name == "ml-rmp-item") return build_rmp(kMovieIds, 11, 474, 1);

    if (name == "method1-user") return build_remainder_cc(kUserIds, 2, u64v{289, 293}, 2);
    if (name == "method1-item") return build_remainder_cc(kMovieIds, 2, u64v{235, 239}, 2);
    if (name == "method2-user") return build_remainder_cc(kUserIds, 2, u64v{193, 194, 195}, 3);
    if (name == "method2-item") return build_remainder_cc(kMovieIds, 2, u64v{157, 158, 159}, 3);
    if (name == "method3-user") return build_polynomial_cc(kUserIds, 2, 97, 6);
    if (name == "method3-item") return build_polynomial_cc(kMovieIds, 2, 73, 6);
    if (name == "method4-user") return build_remainder_cc(kUserIds, 2, u64v{83, 89, 97, 101, 103, 109}, 6);
    if (name == "method4-item") return build_remainder_cc(kMovieIds, 2, u64v{67, 71, 73, 79, 83, 101}, 6);
    if (name == "method5-user")
        return build_gauss_cc(kUserIds, 2, gauss_mods({{8, 5}, {8, -5}, {9, 4}, {9, -4}, {10, 1}, {10, 3}}), 6);
    if (name == "method5-item") return build_remainder_cc(kMovieIds, 2, u64v{67, 71, 73, 79, 83, 101}, 6);
    if (name == "method6-user")
        return build_remainder_cc(kUserIds, 3, u64v{19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53, 59, 67}, 15);
    if (name == "method6-item")
        return build_remainder_cc(kMovieIds, 3, u64v{17, 19, 23, 25, 27, 29, 31, 32, 37, 41, 43, 47, 49, 53}, 14);

    raise(errc::bad_parameters, "unknown preset: " + name);
}

} // namespace catcode
