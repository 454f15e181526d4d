#include "apnforge/records.hpp"

#include <fcntl.h>
#include <unistd.h>

#include <algorithm>
#include <cerrno>
#include <charconv>
#include <cstring>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "json.hpp"

#include "apnforge/errors.hpp"

namespace apnforge {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string::size_type start = 0;
  for (;;) {
    const auto pos = s.find(sep, start);
    out.push_back(s.substr(start, pos == std::string::npos ? std::string::npos : pos - start));
    if (pos == std::string::npos) return out;
    start = pos + 1;
  }
}

template <class T>
T parse_int(const std::string& field, const char* what) {
  T v{};
  const char* end = field.data() + field.size();
  const auto [ptr, ec] = std::from_chars(field.data(), end, v);
  if (field.empty() || ec != std::errc() || ptr != end) {
    throw DomainError(std::string("bad ") + what + " field '" + field + "'");
  }
  return v;
}

std::optional<bool> parse_opt_bool(const std::string& field, const char* what) {
  if (field.empty()) return std::nullopt;
  if (field == "true") return true;
  if (field == "false") return false;
  throw DomainError(std::string("bad ") + what + " field '" + field + "'");
}

std::string opt_bool(const std::optional<bool>& b) { return b ? (*b ? "true" : "false") : ""; }

void check_tag(const std::string& tag) {
  if (tag.empty() || tag.find_first_of(",;\n\"") != std::string::npos) {
    throw DomainError("family tag '" + tag + "' cannot be serialized");
  }
}

}  // namespace

std::string to_csv_row(const ScanRecord& r) {
  std::string families;
  for (const std::string& f : r.families) {
    check_tag(f);
    if (!families.empty()) families += ';';
    families += f;
  }
  if (r.method.find_first_of(",\n") != std::string::npos) throw DomainError("method cannot contain ',' or newline");
  std::ostringstream out;
  out << r.l << ',' << r.k << ',' << r.n << ',' << r.exponent << ',' << r.weight << ',' << opt_bool(r.zero_apn)
      << ',' << opt_bool(r.apn) << ',' << (r.uniformity ? std::to_string(*r.uniformity) : "") << ',' << families
      << ',' << r.method << ',' << r.elapsed_ms;
  return out.str();
}

ScanRecord parse_csv_row(const std::string& line) {
  const std::vector<std::string> f = split(line, ',');
  if (f.size() != 11) throw DomainError("expected 11 CSV fields, got " + std::to_string(f.size()));
  ScanRecord r;
  r.l = parse_int<unsigned long>(f[0], "l");
  r.k = parse_int<unsigned long>(f[1], "k");
  r.n = parse_int<int>(f[2], "n");
  if (f[3].empty() || f[3].find_first_not_of("0123456789") != std::string::npos) {
    throw DomainError("bad exponent field '" + f[3] + "'");
  }
  r.exponent = f[3];
  r.weight = parse_int<int>(f[4], "weight");
  r.zero_apn = parse_opt_bool(f[5], "zero_apn");
  r.apn = parse_opt_bool(f[6], "apn");
  if (!f[7].empty()) r.uniformity = parse_int<std::uint64_t>(f[7], "uniformity");
  if (!f[8].empty()) r.families = split(f[8], ';');
  r.method = f[9];
  r.elapsed_ms = parse_int<std::uint64_t>(f[10], "elapsed_ms");
  return r;
}

void write_csv(std::ostream& out, const std::vector<ScanRecord>& records) {
  out << kCsvHeader << '\n';
  for (const ScanRecord& r : records) out << to_csv_row(r) << '\n';
}

std::vector<ScanRecord> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) throw DomainError("missing or wrong CSV header");
  std::vector<ScanRecord> out;
  while (std::getline(in, line)) {
    if (!line.empty()) out.push_back(parse_csv_row(line));
  }
  return out;
}

std::string to_json_text(const std::vector<ScanRecord>& records) {
  nlohmann::ordered_json arr = nlohmann::ordered_json::array();
  for (const ScanRecord& r : records) {
    nlohmann::ordered_json j;
    j["l"] = r.l;
    j["k"] = r.k;
    j["n"] = r.n;
    j["exponent"] = r.exponent;
    j["weight"] = r.weight;
    j["zero_apn"] = r.zero_apn ? nlohmann::ordered_json(*r.zero_apn) : nullptr;
    j["apn"] = r.apn ? nlohmann::ordered_json(*r.apn) : nullptr;
    j["uniformity"] = r.uniformity ? nlohmann::ordered_json(*r.uniformity) : nullptr;
    j["families"] = r.families;
    j["method"] = r.method;
    j["elapsed_ms"] = r.elapsed_ms;
    arr.push_back(std::move(j));
  }
  return arr.dump(2) + "\n";
}

std::vector<ScanRecord> parse_json_text(const std::string& text) {
  std::vector<ScanRecord> out;
  try {
    const auto arr = nlohmann::json::parse(text);
    if (!arr.is_array()) throw DomainError("expected a JSON array of records");
    for (const auto& j : arr) {
      ScanRecord r;
      r.l = j.at("l").get<unsigned long>();
      r.k = j.at("k").get<unsigned long>();
      r.n = j.at("n").get<int>();
      r.exponent = j.at("exponent").get<std::string>();
      r.weight = j.at("weight").get<int>();
      if (!j.at("zero_apn").is_null()) r.zero_apn = j.at("zero_apn").get<bool>();
      if (!j.at("apn").is_null()) r.apn = j.at("apn").get<bool>();
      if (!j.at("uniformity").is_null()) r.uniformity = j.at("uniformity").get<std::uint64_t>();
      r.families = j.at("families").get<std::vector<std::string>>();
      r.method = j.at("method").get<std::string>();
      r.elapsed_ms = j.at("elapsed_ms").get<std::uint64_t>();
      out.push_back(std::move(r));
    }
  } catch (const nlohmann::json::exception& e) {
    throw DomainError(std::string("malformed record JSON: ") + e.what());
  }
  return out;
}

void sort_records(std::vector<ScanRecord>& records) {
  std::sort(records.begin(), records.end(), [](const ScanRecord& a, const ScanRecord& b) { return a.key() < b.key(); });
}

Checkpoint::Checkpoint(std::string path) : path_(std::move(path)) {
  off_t good = 0;
  {
    std::ifstream in(path_, std::ios::binary);
    if (in) {
      std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
      std::string::size_type start = 0;
      while (start < content.size()) {
        const auto nl = content.find('\n', start);
        if (nl == std::string::npos) break;  // torn tail
        const std::string line = content.substr(start, nl - start);
        if (!line.empty()) {
          try {
            ScanRecord r = parse_csv_row(line);
            done_[r.key()] = std::move(r);
          } catch (const DomainError&) {
            break;
          }
        }
        start = nl + 1;
        good = static_cast<off_t>(start);
      }
    }
  }
  fd_ = ::open(path_.c_str(), O_WRONLY | O_CREAT | O_APPEND | O_CLOEXEC, 0644);
  if (fd_ < 0) throw IoError("cannot open checkpoint " + path_ + ": " + std::strerror(errno));
  if (::ftruncate(fd_, good) != 0) {
    const int err = errno;
    ::close(fd_);
    throw IoError("cannot truncate checkpoint " + path_ + ": " + std::strerror(err));
  }
}

Checkpoint::~Checkpoint() {
  if (fd_ >= 0) ::close(fd_);
}

void Checkpoint::append(const ScanRecord& r) {
  const std::string line = to_csv_row(r) + "\n";
  std::size_t written = 0;
  while (written < line.size()) {
    const ssize_t w = ::write(fd_, line.data() + written, line.size() - written);
    if (w < 0) {
      if (errno == EINTR) continue;
      throw IoError("checkpoint write failed: " + std::string(std::strerror(errno)));
    }
    written += static_cast<std::size_t>(w);
  }
  if (::fsync(fd_) != 0) throw IoError("checkpoint fsync failed: " + std::string(std::strerror(errno)));
  done_[r.key()] = r;
}

}  // namespace apnforge
