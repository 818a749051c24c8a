#include "etf/client/fixture_store.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <sstream>

#include "etf/errors.hpp"

namespace etf::client {

std::string sha256_hex(std::string_view data) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), digest, &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  out.reserve(len * 2);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(kHex[digest[i] >> 4]);
    out.push_back(kHex[digest[i] & 0xF]);
  }
  return out;
}

std::string fingerprint(std::string_view role_key, std::string_view prompt, int attempt) {
  std::string material;
  material.reserve(role_key.size() + prompt.size() + 16);
  material.append(role_key).append("\n").append(prompt);
  if (attempt > 0) material.append("\n#attempt=").append(std::to_string(attempt));
  return sha256_hex(material);
}

FixtureStore::FixtureStore(std::filesystem::path dir) : dir_(std::move(dir)) {}

std::filesystem::path FixtureStore::file_for(const std::string& fp) const { return dir_ / (fp + ".txt"); }

std::optional<std::string> FixtureStore::get(const std::string& fp) const {
  std::lock_guard lock(mutex_);
  std::ifstream in(file_for(fp), std::ios::binary);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool FixtureStore::contains(const std::string& fp) const {
  std::lock_guard lock(mutex_);
  return std::filesystem::exists(file_for(fp));
}

void FixtureStore::put(const std::string& fp, std::string_view response) {
  std::lock_guard lock(mutex_);
  std::filesystem::create_directories(dir_);
  std::filesystem::path target = file_for(fp);
  std::filesystem::path tmp = target;
  tmp += ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write fixture " + tmp.string());
    out.write(response.data(), static_cast<std::streamsize>(response.size()));
  }
  std::filesystem::rename(tmp, target);
}

}  // namespace etf::client
