#include "bohmslit/outputs.hpp"

#include <array>
#include <charconv>
#include <fstream>
#include <system_error>

#include <openssl/evp.h>

#include "bohmslit/errors.hpp"
#include "json_io.hpp"

namespace bohmslit {

std::string format_double(double v) {
  std::array<char, 64> buf{};
  const auto res = std::to_chars(buf.data(), buf.data() + buf.size(), v);
  return std::string(buf.data(), res.ptr);
}

std::string sha256_hex(std::string_view bytes) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("sha256 digest failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned i = 0; i < len; ++i) {
    out.push_back(kHex[md[i] >> 4]);
    out.push_back(kHex[md[i] & 0xF]);
  }
  return out;
}

std::string trajectories_csv(const std::vector<Trajectory>& trajectories) {
  std::string out = "pair_id,t,y1,y2\n";
  for (std::size_t id = 0; id < trajectories.size(); ++id) {
    const auto& tr = trajectories[id];
    for (std::size_t k = 0; k < tr.times.size(); ++k) {
      out += std::to_string(id);
      out += ',';
      out += format_double(tr.times[k]);
      out += ',';
      out += format_double(tr.y1[k]);
      out += ',';
      out += format_double(tr.y2[k]);
      out += '\n';
    }
  }
  return out;
}

std::string arrivals_csv(const ArrivalSet& set) {
  std::string out = "pair_id,right,left,same_side\n";
  for (std::size_t id = 0; id < set.pairs.size(); ++id) {
    const auto& [right, left] = set.pairs[id];
    out += std::to_string(id);
    out += ',';
    out += format_double(right);
    out += ',';
    out += format_double(left);
    out += right * left > 0 ? ",1\n" : ",0\n";
  }
  return out;
}

std::string histogram_csv(const ScreenHistogram& h) {
  std::string out = "bin_left_edge,count\n";
  const auto edges = h.left_edges();
  for (std::size_t i = 0; i < h.counts.size(); ++i) {
    out += format_double(edges[i]);
    out += ',';
    out += std::to_string(h.counts[i]);
    out += '\n';
  }
  return out;
}

OutputDirectory::OutputDirectory(std::filesystem::path dir) : dir_(std::move(dir)) {
  std::error_code ec;
  std::filesystem::create_directories(dir_, ec);
  if (ec || !std::filesystem::is_directory(dir_)) {
    throw IoError("cannot create output directory " + dir_.string() +
                  (ec ? ": " + ec.message() : std::string()));
  }
}

const EmittedFile& OutputDirectory::write(const std::string& name, std::string_view contents) {
  const auto path = dir_ / name;
  {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
    if (!out) throw IoError("failed writing " + path.string());
  }
  files_.push_back({name, sha256_hex(contents), contents.size()});
  return files_.back();
}

namespace detail {

using nlohmann::ordered_json;

ordered_json to_json(const ChiSquare& c) {
  return {{"statistic", c.statistic}, {"dof", c.dof}, {"p_value", c.p_value}};
}

ordered_json to_json(const ScreenHistogram& h) {
  ordered_json j;
  j["bin_width"] = h.width;
  j["bin_edges"] = h.left_edges();
  j["counts"] = h.counts;
  j["side_split"] = {{"upper_count", h.upper}, {"lower_count", h.lower}};
  return j;
}

ordered_json to_json(const SelectiveReport& r) {
  ordered_json j;
  j["selection_rule"] = r.selection_rule;
  j["n_selected"] = r.n_selected;
  j["n_total"] = r.n_total;
  j["left_upper_fraction"] = r.left_upper_fraction;
  j["mirror_tv"] = r.mirror_tv;
  j["left_histogram"] = to_json(r.left_histogram);
  j["right_histogram"] = to_json(r.right_histogram);
  return j;
}

ordered_json to_json(const ComparisonReport& r) {
  ordered_json j;
  j["label_a"] = r.label_a;
  j["label_b"] = r.label_b.empty() ? ordered_json(nullptr) : ordered_json(r.label_b);
  j["bins_per_axis"] = r.bins_per_axis;
  j["tv_distance"] = r.label_b.empty() ? ordered_json(nullptr) : ordered_json(r.tv_distance);
  j["chi_square"] = r.label_b.empty() ? ordered_json(nullptr) : to_json(r.chi_square);
  j["same_side_prob"] = {
      {"a", r.same_side_a},
      {"b", r.same_side_b ? ordered_json(*r.same_side_b) : ordered_json(nullptr)}};
  j["com_residual_max"] =
      r.com_residual_max ? ordered_json(*r.com_residual_max) : ordered_json(nullptr);
  j["born"] = {{"same_side_probability", r.born.same_side_probability},
               {"joint_tv", r.born.joint_tv},
               {"joint_chi_square", to_json(r.born.joint_chi_square)},
               {"right_marginal_tv", r.born.right_marginal_tv}};
  j["notes"] = r.notes;
  return j;
}

}  // namespace detail

}  // namespace bohmslit
