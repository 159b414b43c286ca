#include "tomoreg/config.hpp"

#include <fstream>
#include <map>
#include <sstream>

namespace tomoreg {

namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

std::string join(const std::vector<double>& vals) {
  std::ostringstream os;
  os.precision(17);
  for (size_t i = 0; i < vals.size(); ++i) {
    if (i) os << ",";
    os << vals[i];
  }
  return os.str();
}

std::vector<double> split_doubles(const std::string& s) {
  std::vector<double> out;
  std::istringstream is(s);
  std::string item;
  while (std::getline(is, item, ',')) {
    if (item.empty()) continue;
    out.push_back(std::stod(item));
  }
  return out;
}

std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r");
  return s.substr(a, b - a + 1);
}

}  // namespace

void RunConfig::validate() const {
  geometry.validate();
  if (!(noise_total_counts > 0.0))
    throw std::invalid_argument("config: noise.total_counts must be positive");
  if (cutoffs.empty()) throw std::invalid_argument("config: cutoff list must be nonempty");
  for (double c : cutoffs)
    if (!(c > 0.0) || c > 1.0)
      throw std::invalid_argument("config: every cutoff must be in (0, 1]");
  if (preprocess_method != "ppa" && preprocess_method != "tikhonov_ppa" &&
      preprocess_method != "truncated_svd")
    throw std::invalid_argument("config: unknown preprocess.method '" + preprocess_method + "'");
  if (preprocess_method == "tikhonov_ppa" && !(preprocess_epsilon_rel > 0.0))
    throw std::invalid_argument("config: preprocess.epsilon_rel must be positive");
  if (!(recon_alpha > 0.0)) throw std::invalid_argument("config: recon.alpha must be positive");
  if (!(recon_tol > 0.0) || recon_max_iters < 1 || !(preprocess_outer_tol > 0.0) ||
      !(preprocess_inner_tol > 0.0) || preprocess_max_outer < 1 || preprocess_max_inner < 1)
    throw std::invalid_argument("config: invalid tolerances or iteration budgets");
  if (fbp_cutoff < 0.0 || fbp_cutoff > 1.0)
    throw std::invalid_argument("config: fbp.cutoff must be in [0, 1]");
  if (out_dir.empty()) throw std::invalid_argument("config: output.dir must be nonempty");
}

std::string RunConfig::serialize() const {
  std::map<std::string, std::string> kv;
  kv["geometry.n"] = std::to_string(geometry.n);
  kv["geometry.n_angles"] = std::to_string(geometry.n_angles);
  kv["geometry.n_bins"] = std::to_string(geometry.n_bins);
  kv["geometry.span_deg"] = fmt(geometry.span_deg);
  kv["geometry.response_sigma0"] = fmt(geometry.response_sigma0);
  kv["geometry.response_sigma_slope"] = fmt(geometry.response_sigma_slope);
  kv["phantom.file"] = phantom_file;
  kv["noise.total_counts"] = fmt(noise_total_counts);
  kv["seed"] = std::to_string(seed);
  kv["mollifier.cutoffs"] = join(cutoffs);
  kv["preprocess.method"] = preprocess_method;
  kv["preprocess.epsilon_rel"] = fmt(preprocess_epsilon_rel);
  kv["preprocess.outer_tol"] = fmt(preprocess_outer_tol);
  kv["preprocess.max_outer"] = std::to_string(preprocess_max_outer);
  kv["preprocess.inner_tol"] = fmt(preprocess_inner_tol);
  kv["preprocess.max_inner"] = std::to_string(preprocess_max_inner);
  kv["recon.alpha"] = fmt(recon_alpha);
  kv["recon.tol"] = fmt(recon_tol);
  kv["recon.max_iters"] = std::to_string(recon_max_iters);
  kv["recon.positivity"] = recon_positivity ? "true" : "false";
  kv["fbp.cutoff"] = fmt(fbp_cutoff);
  kv["output.dir"] = out_dir;

  std::ostringstream os;
  for (const auto& [k, v] : kv) os << k << " = " << v << "\n";
  return os.str();
}

std::string RunConfig::hash() const {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (char c : serialize()) {
    h ^= static_cast<unsigned char>(c);
    h *= 0x100000001b3ull;
  }
  std::ostringstream os;
  os << std::hex << h;
  return os.str();
}

RunConfig parse_config(const std::string& text) {
  RunConfig cfg;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const auto hash_pos = line.find('#');
    if (hash_pos != std::string::npos) line.erase(hash_pos);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(lineno) + ": expected key = value");
    const std::string key = trim(line.substr(0, eq));
    const std::string val = trim(line.substr(eq + 1));

    try {
      if (key == "geometry.n") cfg.geometry.n = std::stol(val);
      else if (key == "geometry.n_angles") cfg.geometry.n_angles = std::stol(val);
      else if (key == "geometry.n_bins") cfg.geometry.n_bins = std::stol(val);
      else if (key == "geometry.span_deg") cfg.geometry.span_deg = std::stod(val);
      else if (key == "geometry.response_sigma0") cfg.geometry.response_sigma0 = std::stod(val);
      else if (key == "geometry.response_sigma_slope") cfg.geometry.response_sigma_slope = std::stod(val);
      else if (key == "phantom.file") cfg.phantom_file = val;
      else if (key == "noise.total_counts") cfg.noise_total_counts = std::stod(val);
      else if (key == "seed") cfg.seed = std::stoull(val);
      else if (key == "mollifier.cutoffs") cfg.cutoffs = split_doubles(val);
      else if (key == "preprocess.method") cfg.preprocess_method = val;
      else if (key == "preprocess.epsilon_rel") cfg.preprocess_epsilon_rel = std::stod(val);
      else if (key == "preprocess.outer_tol") cfg.preprocess_outer_tol = std::stod(val);
      else if (key == "preprocess.max_outer") cfg.preprocess_max_outer = std::stoi(val);
      else if (key == "preprocess.inner_tol") cfg.preprocess_inner_tol = std::stod(val);
      else if (key == "preprocess.max_inner") cfg.preprocess_max_inner = std::stoi(val);
      else if (key == "recon.alpha") cfg.recon_alpha = std::stod(val);
      else if (key == "recon.tol") cfg.recon_tol = std::stod(val);
      else if (key == "recon.max_iters") cfg.recon_max_iters = std::stoi(val);
      else if (key == "recon.positivity") cfg.recon_positivity = (val == "true" || val == "1");
      else if (key == "fbp.cutoff") cfg.fbp_cutoff = std::stod(val);
      else if (key == "output.dir") cfg.out_dir = val;
      else throw std::invalid_argument("unknown key '" + key + "'");
    } catch (const std::invalid_argument&) {
      throw;
    } catch (const std::exception&) {
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": cannot parse value for '" + key + "'");
    }
  }
  cfg.validate();
  return cfg;
}

RunConfig load_config(const std::filesystem::path& path) {
  std::ifstream is(path);
  if (!is) throw std::invalid_argument("cannot open config file: " + path.string());
  std::ostringstream buf;
  buf << is.rdbuf();
  return parse_config(buf.str());
}

}  // namespace tomoreg
