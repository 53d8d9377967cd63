#pragma once

#include <filesystem>

namespace fixture {

// Writes the deterministic test corpus: 30 tutorials (10 video, 20 article)
// plus a manifest, engineered so a pipeline run exercises every funnel path
// (duplicates, a failing download, content-filter drops, a non-GUI platform,
// truncating alignments, mid-tutorial WAIT/CALL_USER breaks, a parse
// failure, judge drops, and a multi-action WAIT residue). Every byte is a
// pure function of the tables in the implementation, so regenerating the
// corpus reproduces recorded service exchanges exactly.
void write_corpus(const std::filesystem::path& dir);

// Prediction-records fixture covering correct, wrong-type, wrong-value, and
// out-of-box cases.
void write_eval_records(const std::filesystem::path& file);

// The pipeline config matching the corpus: three seeds, keyword target 5.
// `mode` is "live", "record", or "replay".
std::string config_text(const std::string& mode, const std::string& base_url,
                        const std::filesystem::path& manifest,
                        const std::filesystem::path& fixtures);

}  // namespace fixture
