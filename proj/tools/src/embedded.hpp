#pragma once

#include <cstddef>

namespace sheafctx::cli::detail
{
    struct EmbeddedFile
    {
        const char * name;
        const char * content;
        std::size_t size;
    };

    extern const EmbeddedFile embedded_files[];
    extern const std::size_t embedded_file_count;
}
