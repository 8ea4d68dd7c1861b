#include "dfh/corpus.hpp"

namespace dfh {

namespace {

std::vector<CorpusEntry> build_corpus() {
  std::vector<CorpusEntry> v;

  // log(1+z): a_n = (-1)^(n+1)/n
  v.push_back({"log1p", R"json({
    "name": "log1p",
    "field": {"type": "Q"},
    "operator": {"A": [["1","1"],["1"],["0"]]},
    "recurrence": {"B": [["0"],["1","1"],["2","1"]]},
    "initial": ["0","1"]
  })json",
               GrowthTag::LogN, 2});

  // log(1+z^2): support on even n, a_{2k} = (-1)^(k+1)/k
  v.push_back({"logm2", R"json({
    "name": "logm2",
    "field": {"type": "Q"},
    "recurrence": {"B": [["0"],["1","1"],["0"],["3","1"]]},
    "initial": ["0","0","1"]
  })json",
               GrowthTag::LogN, 2});

  // log(1+z^3): support on multiples of 3
  v.push_back({"logm3", R"json({
    "name": "logm3",
    "field": {"type": "Q"},
    "recurrence": {"B": [["0"],["1","1"],["0"],["0"],["4","1"]]},
    "initial": ["0","0","0","1"]
  })json",
               GrowthTag::LogN, 2});

  // e^z: a_n = 1/n!
  v.push_back({"exp", R"json({
    "name": "exp",
    "field": {"type": "Q"},
    "operator": {"A": [["1"],["-1"]]},
    "recurrence": {"B": [["-1"],["1","1"]]},
    "initial": ["1"]
  })json",
               GrowthTag::NLogN, 1});

  // 1/(1-2z): a_n = 2^n
  v.push_back({"geometric2", R"json({
    "name": "geometric2",
    "field": {"type": "Q"},
    "operator": {"A": [["1","-2"],["-2"]]},
    "recurrence": {"B": [["-2"],["1"]]},
    "initial": ["1"]
  })json",
               GrowthTag::Linear, 1});

  // 1/(1-z/2): a_n = 2^(-n)
  v.push_back({"halfgeom", R"json({
    "name": "halfgeom",
    "field": {"type": "Q"},
    "operator": {"A": [["2","-1"],["-1"]]},
    "recurrence": {"B": [["-1"],["2"]]},
    "initial": ["1"]
  })json",
               GrowthTag::Linear, 1});

  // 1/(1-z): a_n = 1
  v.push_back({"invgeom", R"json({
    "name": "invgeom",
    "field": {"type": "Q"},
    "operator": {"A": [["1","-1"],["-1"]]},
    "recurrence": {"B": [["-1"],["1"]]},
    "initial": ["1"]
  })json",
               GrowthTag::Constant, 3});

  // z/(1-z)^2: a_n = n
  v.push_back({"nzn", R"json({
    "name": "nzn",
    "field": {"type": "Q"},
    "recurrence": {"B": [["0"],["-2","-1"],["1","1"]]},
    "initial": ["0","1"]
  })json",
               GrowthTag::LogN, 3});

  // 1/(1+z^2): a_n cycles 1, 0, -1, 0
  v.push_back({"altperiodic", R"json({
    "name": "altperiodic",
    "field": {"type": "Q"},
    "recurrence": {"B": [["1"],["0"],["1"]]},
    "initial": ["1","0"]
  })json",
               GrowthTag::Constant, 3});

  // (1-4z)^(-1/2): a_n = C(2n,n)
  v.push_back({"catalanish", R"json({
    "name": "catalanish",
    "field": {"type": "Q"},
    "operator": {"A": [["1","-4"],["-2"]]},
    "recurrence": {"B": [["-2","-4"],["1","1"]]},
    "initial": ["1"]
  })json",
               GrowthTag::Linear, 1});

  // -log(1-z)/z: a_n = 1/(n+1)
  v.push_back({"hilbertish", R"json({
    "name": "hilbertish",
    "field": {"type": "Q"},
    "recurrence": {"B": [["-1","-1"],["2","1"]]},
    "initial": ["1"]
  })json",
               GrowthTag::LogN, 2});

  // over Q(i): a_n = i^n/n for n >= 1
  v.push_back({"gauss_i", R"json({
    "name": "gauss_i",
    "field": {"type": "quadratic", "d": -1},
    "recurrence": {"B": [["0"],["(0)+(1)*sqrt(-1)","(0)+(1)*sqrt(-1)"],["-2","-1"]]},
    "initial": ["0","(0)+(1)*sqrt(-1)"]
  })json",
               GrowthTag::LogN, 2});

  return v;
}

}  // namespace

const std::vector<CorpusEntry>& corpus() {
  static const std::vector<CorpusEntry> entries = build_corpus();
  return entries;
}

const CorpusEntry& corpus_entry(const std::string& name) {
  for (const auto& e : corpus())
    if (e.name == name) return e;
  throw SchemaError("unknown corpus series \"" + name + "\"");
}

SeriesDefinition corpus_series(const std::string& name) {
  const CorpusEntry& e = corpus_entry(name);
  return series_from_json_text(e.definition_json, "corpus:" + name);
}

}  // namespace dfh
