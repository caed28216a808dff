#include "wscale/digest.hpp"

#include <openssl/evp.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <memory>

#include "wscale/errors.hpp"

namespace wscale {

namespace {

using CtxPtr = std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)>;

std::string finish_hex(EVP_MD_CTX* ctx) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> raw{};
  unsigned int len = 0;
  if (EVP_DigestFinal_ex(ctx, raw.data(), &len) != 1)
    throw numeric_error("sha256: digest finalization failed");
  std::string hex(2 * len, '0');
  static const char* digits = "0123456789abcdef";
  for (unsigned int i = 0; i < len; ++i) {
    hex[2 * i] = digits[raw[i] >> 4];
    hex[2 * i + 1] = digits[raw[i] & 0x0f];
  }
  return hex;
}

CtxPtr new_sha256_ctx() {
  CtxPtr ctx(EVP_MD_CTX_new(), EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1)
    throw numeric_error("sha256: context initialization failed");
  return ctx;
}

}  // namespace

std::string sha256_hex(std::string_view bytes) {
  CtxPtr ctx = new_sha256_ctx();
  if (EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1)
    throw numeric_error("sha256: update failed");
  return finish_hex(ctx.get());
}

std::string sha256_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw io_error("cannot open '" + path + "' for digest");
  CtxPtr ctx = new_sha256_ctx();
  std::array<char, 1 << 16> buf;
  while (in) {
    in.read(buf.data(), buf.size());
    const std::streamsize got = in.gcount();
    if (got > 0 && EVP_DigestUpdate(ctx.get(), buf.data(), static_cast<size_t>(got)) != 1)
      throw numeric_error("sha256: update failed");
  }
  if (in.bad()) throw io_error("read error on '" + path + "'");
  return finish_hex(ctx.get());
}

}  // namespace wscale
