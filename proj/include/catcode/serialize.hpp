#pragma once

#include <string>
#include <vector>

#include "catcode/codebook.hpp"
#include "catcode/inference_types.hpp"

namespace catcode {

// Codebook file format v1, a single JSON document. Serialization is
// deterministic: the same codebook always produces identical bytes.
std::string codebook_to_json(const Codebook& cb);
Codebook codebook_from_json(const std::string& text);

void save_codebook(const Codebook& cb, const std::string& path);
Codebook load_codebook(const std::string& path);

// {"dists": [[...], ...]}; sums are validated to 1 within 1e-9 on load.
std::string ensemble_to_json(const EnsembleOutput& out);
EnsembleOutput ensemble_from_json_text(const std::string& text);
std::vector<EnsembleOutput> ensembles_from_file(const std::string& path);

std::vector<std::uint64_t> read_id_file(const std::string& path);
std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

} // namespace catcode
