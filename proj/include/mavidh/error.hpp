#pragma once

#include <stdexcept>
#include <string>

namespace mavidh {

/// Error categories surfaced by the library. Each maps to a distinct
/// diagnostic so callers (and the CLI) can report failures precisely.
enum class errc {
    invalid_input,  // precondition violated (bad dimensions, ranges, sizes)
    schema,         // malformed table/config/feature-name mismatch
    io,             // file system and codec failures
    model_load,     // model spec or serialized network cannot be loaded
    inference,      // model execution failed
    empty_mask      // segmentation produced no lung pixels for an image
};

class Error : public std::runtime_error {
public:
    Error(errc code, const std::string& message)
        : std::runtime_error(message), code_(code) {}

    errc code() const noexcept { return code_; }

private:
    errc code_;
};

[[noreturn]] inline void throw_error(errc code, const std::string& message) {
    throw Error(code, message);
}

inline const char* errc_name(errc code) {
    switch (code) {
        case errc::invalid_input: return "invalid_input";
        case errc::schema: return "schema";
        case errc::io: return "io";
        case errc::model_load: return "model_load";
        case errc::inference: return "inference";
        case errc::empty_mask: return "empty_mask";
    }
    return "unknown";
}

}  // namespace mavidh
