#pragma once
#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "cutblock/codes.hpp"
#include "cutblock/search.hpp"

namespace cutblock {

using Json = nlohmann::json;

inline constexpr const char* kVersion = "cutblock 1.0.0";

// ---------------------------------------------------------------------------
// Text artifact formats.  '#' starts a comment, blank lines are skipped, and
// every parse error carries <name>:<line>.
//
//   pg N q      one point per row: N+1 element encodings in 0..q-1
//   lines N q   one line per row as a spanning pair: 2(N+1) encodings
//   mat k n q   k rows of n element encodings

PointSet read_pointset(std::istream& in, const std::string& name = "<stream>");
LineSet read_lineset(std::istream& in, const std::string& name = "<stream>");
GeneratorMatrix read_matrix(std::istream& in, const std::string& name = "<stream>");

void write_pointset(std::ostream& out, const PointSet& S);
void write_lineset(std::ostream& out, const LineSet& L);
void write_matrix(std::ostream& out, const GeneratorMatrix& G);

PointSet read_pointset_file(const std::string& path);
LineSet read_lineset_file(const std::string& path);
GeneratorMatrix read_matrix_file(const std::string& path);
void write_pointset_file(const std::string& path, const PointSet& S);
void write_lineset_file(const std::string& path, const LineSet& L);
void write_matrix_file(const std::string& path, const GeneratorMatrix& G);

// first keyword of the file: "pg", "lines" or "mat"
std::string sniff_header(const std::string& path);

// ---------------------------------------------------------------------------
// JSON report plumbing

Json search_config_json(const SearchConfig& c);
SearchConfig search_config_from_json(const Json& j);
Json search_report_json(const SearchReport& r);  // config + outcome, no artifacts
Json witness_json(const Witness& w);

// Everything needed to re-run a search and compare artifacts byte for byte.
struct RunManifest {
  std::string command;  // "search"
  std::string version;
  SearchConfig config;
  std::vector<std::string> artifacts;  // paths written by the run
  Json results;                        // success, trials, union_size, reverified
  double seconds = 0.0;                // informational; excluded from replay
};

Json manifest_json(const RunManifest& m);
RunManifest manifest_from_json(const Json& j);
void write_manifest_file(const std::string& path, const RunManifest& m);
RunManifest read_manifest_file(const std::string& path);

}  // namespace cutblock
