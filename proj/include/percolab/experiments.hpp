#pragma once

#include <functional>
#include <map>
#include <string>
#include <vector>

namespace percolab {

// Typed parameter bag: string-keyed, parsed on demand, unknown keys rejected
// against each experiment's declared schema.
class ParamMap {
 public:
  ParamMap() = default;
  explicit ParamMap(std::map<std::string, std::string> kv) : kv_(std::move(kv)) {}

  void set(const std::string& key, const std::string& value) { kv_[key] = value; }
  bool has(const std::string& key) const { return kv_.count(key) > 0; }

  long long get_int(const std::string& key, long long fallback) const;
  double get_double(const std::string& key, double fallback) const;
  std::uint64_t get_u64(const std::string& key, std::uint64_t fallback) const;
  std::string get_string(const std::string& key, const std::string& fallback) const;

  const std::map<std::string, std::string>& raw() const { return kv_; }

 private:
  std::map<std::string, std::string> kv_;
};

ParamMap load_param_file(const std::string& path);

struct ExperimentOutput {
  std::string file;  // relative to the output directory
  std::uint64_t digest;
};

struct RunManifest {
  std::string experiment;
  std::string tool_version;
  std::map<std::string, std::string> parameters;
  std::vector<std::uint64_t> replicate_seeds;
  double wall_clock_seconds = 0;
  std::vector<ExperimentOutput> outputs;
  bool pass = false;
  std::vector<std::string> notes;

  std::string to_json() const;
};

struct ExperimentContext {
  ParamMap params;
  std::string out_dir;
  RunManifest* manifest;  // notes/outputs/replicate seeds appended here

  void emit(const std::string& rel_path, const std::string& content) const;
  void note(const std::string& text) const { manifest->notes.push_back(text); }
};

struct ExperimentInfo {
  std::string name;
  std::string anchor;  // one-line pointer into the source material
  std::vector<std::string> known_keys;
  std::function<bool(const ExperimentContext&)> run;
};

const std::vector<ExperimentInfo>& experiment_catalogue();

// Validates parameters, runs, writes outputs and <outdir>/manifest.json.
RunManifest run_experiment(const std::string& name, const ParamMap& params,
                           const std::string& out_dir);

}  // namespace percolab
