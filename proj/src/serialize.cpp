#include "catcode/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "catcode/errors.hpp"

namespace catcode {

using json = nlohmann::ordered_json;

std::string codebook_to_json(const Codebook& cb) {
    json j;
    j["scheme"] = scheme_name(cb.scheme);
    j["n_classes"] = cb.n_classes;
    j["site_sizes"] = cb.site_sizes;

    json p;
    switch (cb.scheme) {
        case Scheme::polynomial: {
            const auto& pp = std::get<PolynomialParams>(cb.params);
            p["p"] = pp.p;
            p["k"] = pp.k;
            p["eval_points"] = pp.eval_points;
            break;
        }
        case Scheme::remainder: {
            p["moduli"] = std::get<RemainderParams>(cb.params).moduli;
            break;
        }
        case Scheme::gauss: {
            const auto& gp = std::get<GaussParams>(cb.params);
            std::vector<std::string> mods;
            mods.reserve(gp.moduli.size());
            for (GaussInt m : gp.moduli) mods.push_back(gauss_to_string(m));
            p["moduli"] = mods;
            break;
        }
        case Scheme::coo: {
            const auto& cp = std::get<CooParams>(cb.params);
            p["total_bits"] = cp.total_bits;
            if (!cp.frequency_order.empty()) p["frequency_order"] = cp.frequency_order;
            break;
        }
        case Scheme::rmp: {
            const auto& rp = std::get<RmpParams>(cb.params);
            p["m"] = rp.m;
            p["seed"] = rp.seed;
            p["kept_coords"] = rp.kept_coords; // stored explicitly for bit-exact reload
            break;
        }
        case Scheme::ecoc: {
            const auto& ep = std::get<EcocParams>(cb.params);
            p["bits"] = ep.bits;
            p["variant"] = ep.random_codewords ? "random" : "binary";
            if (ep.random_codewords) p["seed"] = ep.seed;
            break;
        }
    }
    j["params"] = p;
    j["anti"] = cb.anti;
    j["version"] = 1;
    return j.dump(2) + "\n";
}

Codebook codebook_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        raise(errc::parse_error, std::string("bad codebook JSON: ") + e.what());
    }
    try {
        if (j.at("version").get<int>() != 1) raise(errc::parse_error, "unsupported codebook version");
        Scheme scheme = scheme_from_name(j.at("scheme").get<std::string>());
        std::uint64_t n = j.at("n_classes").get<std::uint64_t>();
        const json& p = j.at("params");
        bool anti = j.value("anti", false);

        Codebook cb;
        switch (scheme) {
            case Scheme::polynomial: {
                cb = build_polynomial_cc(n, p.at("k").get<unsigned>(), p.at("p").get<std::uint64_t>(),
                                         static_cast<unsigned>(p.at("eval_points").size()),
                                         p.at("eval_points").get<std::vector<std::uint32_t>>());
                break;
            }
            case Scheme::remainder: {
                auto mods = p.at("moduli").get<std::vector<std::uint64_t>>();
                std::vector<std::uint32_t> sorted_sizes; // k recovered from the bound
                for (auto m : mods) sorted_sizes.push_back(static_cast<std::uint32_t>(m));
                unsigned k = theoretical_min_collision(n, sorted_sizes) + 1;
                cb = build_remainder_cc(n, k, mods, static_cast<unsigned>(mods.size()));
                break;
            }
            case Scheme::gauss: {
                std::vector<GaussInt> mods;
                for (const auto& s : p.at("moduli")) mods.push_back(gauss_from_string(s.get<std::string>()));
                std::vector<std::uint32_t> sizes;
                for (GaussInt m : mods) sizes.push_back(static_cast<std::uint32_t>(gauss_norm(m)));
                unsigned k = theoretical_min_collision(n, sizes) + 1;
                cb = build_gauss_cc(n, k, mods, static_cast<unsigned>(mods.size()));
                break;
            }
            case Scheme::coo: {
                std::optional<std::vector<std::uint32_t>> order;
                if (p.contains("frequency_order")) order = p.at("frequency_order").get<std::vector<std::uint32_t>>();
                cb = build_coo(n, p.at("total_bits").get<std::uint32_t>(), order);
                break;
            }
            case Scheme::rmp: {
                unsigned m = p.at("m").get<unsigned>();
                cb = build_rmp(n, m, static_cast<std::uint32_t>(p.at("kept_coords").size()),
                               p.at("seed").get<std::uint64_t>());
                // the stored list wins over regeneration, for bit-exact reload
                auto kept = p.at("kept_coords").get<std::vector<std::uint32_t>>();
                for (std::size_t i = 0; i < kept.size(); ++i) {
                    if (kept[i] >= (1u << m) || (i > 0 && kept[i] <= kept[i - 1]))
                        raise(errc::parse_error, "kept_coords must be a sorted subset of [0, 2^m)");
                }
                std::get<RmpParams>(cb.params).kept_coords = std::move(kept);
                break;
            }
            case Scheme::ecoc: {
                bool random = p.value("variant", "binary") == std::string("random");
                cb = build_ecoc(n, p.at("bits").get<unsigned>(), random, p.value("seed", 0ull));
                break;
            }
        }
        cb.anti = anti;
        if (j.contains("site_sizes")) {
            auto sizes = j.at("site_sizes").get<std::vector<std::uint32_t>>();
            if (sizes != cb.site_sizes) raise(errc::parse_error, "site_sizes do not match params");
        }
        return cb;
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("bad codebook JSON: ") + e.what());
    }
}

void save_codebook(const Codebook& cb, const std::string& path) {
    write_text_file(path, codebook_to_json(cb));
}

Codebook load_codebook(const std::string& path) { return codebook_from_json(read_text_file(path)); }

std::string ensemble_to_json(const EnsembleOutput& out) {
    json j;
    j["dists"] = out.dists;
    return j.dump() + "\n";
}

namespace {

EnsembleOutput ensemble_from_json(const json& j) {
    EnsembleOutput out;
    out.dists = j.at("dists").get<std::vector<std::vector<double>>>();
    for (const auto& d : out.dists) {
        double sum = 0;
        for (double v : d) {
            if (v < 0) raise(errc::parse_error, "negative probability in ensemble output");
            sum += v;
        }
        if (std::abs(sum - 1.0) > 1e-9) raise(errc::parse_error, "site distribution does not sum to 1");
    }
    return out;
}

} // namespace

EnsembleOutput ensemble_from_json_text(const std::string& text) {
    try {
        return ensemble_from_json(json::parse(text));
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("bad ensemble JSON: ") + e.what());
    }
}

std::vector<EnsembleOutput> ensembles_from_file(const std::string& path) {
    std::string text = read_text_file(path);
    try {
        json j = json::parse(text);
        std::vector<EnsembleOutput> out;
        if (j.is_array())
            for (const auto& e : j) out.push_back(ensemble_from_json(e));
        else
            out.push_back(ensemble_from_json(j));
        return out;
    } catch (const json::exception& e) {
        raise(errc::parse_error, std::string("bad ensemble JSON: ") + e.what());
    }
}

std::vector<std::uint64_t> read_id_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) raise(errc::io_error, "cannot open " + path);
    std::vector<std::uint64_t> ids;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        try {
            std::size_t pos = 0;
            std::uint64_t v = std::stoull(line, &pos);
            while (pos < line.size() && (line[pos] == ' ' || line[pos] == '\r' || line[pos] == '\t')) ++pos;
            if (pos != line.size()) throw std::invalid_argument("trailing junk");
            ids.push_back(v);
        } catch (const std::exception&) {
            raise(errc::parse_error, path + ":" + std::to_string(lineno) + ": not a decimal id: " + line);
        }
    }
    return ids;
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) raise(errc::io_error, "cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::string& path, const std::string& text) {
    std::ofstream out(path, std::ios::binary);
    if (!out) raise(errc::io_error, "cannot write " + path);
    out << text;
    if (!out) raise(errc::io_error, "write failed: " + path);
}

} // namespace catcode
