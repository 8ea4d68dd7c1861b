#pragma once

#include <string>
#include <vector>

#include "dfh/classify.hpp"
#include "dfh/io.hpp"

namespace dfh {

// Built-in example series. expected_branch names the growth dichotomy branch
// that fires for the series: 1 = height comparable to n, 2 = denominator
// comparable to n, 3 = quasipolynomial coefficients with root-of-unity poles.
struct CorpusEntry {
  std::string name;
  std::string definition_json;  // same schema as a series file
  GrowthTag expected_class = GrowthTag::Unknown;
  int expected_branch = 0;
};

const std::vector<CorpusEntry>& corpus();
const CorpusEntry& corpus_entry(const std::string& name);  // SchemaError when unknown

// Loads the embedded definition through the same validator as series files.
SeriesDefinition corpus_series(const std::string& name);

}  // namespace dfh
