#include "docre/manifest.hpp"

#include <openssl/evp.h>

#include <array>
#include <fstream>
#include <memory>

#include "docre/errors.hpp"
#include "docre/io.hpp"

namespace docre {

namespace {

class Sha256 {
 public:
  Sha256() : ctx_(EVP_MD_CTX_new(), EVP_MD_CTX_free) {
    if (!ctx_ || EVP_DigestInit_ex(ctx_.get(), EVP_sha256(), nullptr) != 1)
      throw std::runtime_error("sha256 init failed");
  }
  void update(const void* data, std::size_t n) {
    if (EVP_DigestUpdate(ctx_.get(), data, n) != 1) throw std::runtime_error("sha256 update failed");
  }
  std::string hex() {
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (EVP_DigestFinal_ex(ctx_.get(), md.data(), &len) != 1)
      throw std::runtime_error("sha256 final failed");
    static constexpr char digits[] = "0123456789abcdef";
    std::string out;
    for (unsigned int i = 0; i < len; ++i) {
      out += digits[md[i] >> 4];
      out += digits[md[i] & 15];
    }
    return out;
  }

 private:
  std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx_;
};

}  // namespace

std::string sha256_hex(std::string_view data) {
  Sha256 h;
  h.update(data.data(), data.size());
  return h.hex();
}

std::string sha256_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open " + path.string());
  Sha256 h;
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    h.update(buf.data(), static_cast<std::size_t>(in.gcount()));
  }
  return h.hex();
}

std::string Manifest::config_hash() const { return sha256_hex(config.dump()); }

nlohmann::json Manifest::to_json() const {
  auto files = [](const std::vector<std::filesystem::path>& paths) {
    nlohmann::json out = nlohmann::json::array();
    for (const auto& p : paths) out.push_back({{"path", p.string()}, {"sha256", sha256_file(p)}});
    return out;
  };
  return {{"subcommand", subcommand}, {"config", config}, {"config_hash", config_hash()},
          {"seed", seed},             {"inputs", files(inputs)}, {"outputs", files(outputs)}};
}

std::filesystem::path manifest_path(const std::filesystem::path& primary_output) {
  auto p = primary_output;
  p += ".manifest.json";
  return p;
}

void write_manifest(const Manifest& manifest, const std::filesystem::path& primary_output) {
  write_text(manifest_path(primary_output), manifest.to_json().dump(2) + "\n");
}

}  // namespace docre
