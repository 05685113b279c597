#include <sheafctx_cli/cli.hpp>

#include <sheafctx/error.hpp>

#include <openssl/evp.h>

#include <memory>

auto sheafctx::cli::sha256_hex(std::string_view bytes) -> std::string
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx{EVP_MD_CTX_new(), &EVP_MD_CTX_free};
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (! ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1
            || EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1
            || EVP_DigestFinal_ex(ctx.get(), digest, &length) != 1)
        throw Error{ErrorCode::InvalidArgument, "SHA-256 computation failed"};

    static constexpr char hex[] = "0123456789abcdef";
    std::string result;
    for (unsigned int i = 0; i < length; ++i) {
        result += hex[digest[i] >> 4];
        result += hex[digest[i] & 0xf];
    }
    return result;
}
