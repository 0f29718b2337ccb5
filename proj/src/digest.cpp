#include "netstress/digest.hpp"

#include <openssl/evp.h>

#include <fstream>
#include <memory>

#include "netstress/error.hpp"

namespace netstress {

namespace {

struct CtxDeleter {
    void operator()(EVP_MD_CTX* ctx) const { EVP_MD_CTX_free(ctx); }
};

std::string hex_of(const unsigned char* digest, unsigned len) {
    static const char* hexdig = "0123456789abcdef";
    std::string out(len * 2, '0');
    for (unsigned i = 0; i < len; ++i) {
        out[2 * i] = hexdig[digest[i] >> 4];
        out[2 * i + 1] = hexdig[digest[i] & 0xf];
    }
    return out;
}

} // namespace

std::string sha256_hex(std::string_view bytes) {
    std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (!ctx || !EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) ||
        !EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) ||
        !EVP_DigestFinal_ex(ctx.get(), digest, &len))
        throw RuntimeFailure("sha256 computation failed");
    return hex_of(digest, len);
}

std::string sha256_file_hex(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw RuntimeFailure("cannot open file for digest: " + path);
    std::unique_ptr<EVP_MD_CTX, CtxDeleter> ctx(EVP_MD_CTX_new());
    if (!ctx || !EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr))
        throw RuntimeFailure("sha256 init failed");
    char buf[1 << 16];
    while (in) {
        in.read(buf, sizeof buf);
        std::streamsize got = in.gcount();
        if (got > 0 && !EVP_DigestUpdate(ctx.get(), buf, size_t(got)))
            throw RuntimeFailure("sha256 update failed");
    }
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned len = 0;
    if (!EVP_DigestFinal_ex(ctx.get(), digest, &len))
        throw RuntimeFailure("sha256 final failed");
    return hex_of(digest, len);
}

} // namespace netstress
