#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include "lfpc/waveletlab.hpp"

namespace lfpc {

/// Syntax or reference error with a 1-based source position.
class ParseError : public Error {
public:
    ParseError(const std::string& msg, int line, int col)
        : Error(msg + " (line " + std::to_string(line) + ", column " + std::to_string(col) + ")"),
          line(line),
          col(col) {}
    int line;
    int col;
};

struct SetDef {
    std::string name;
    ESet value;
    bool operator==(const SetDef&) const = default;
};

struct FuncDef {
    std::string name;
    SBFunction value;
    bool operator==(const FuncDef&) const = default;
};

struct CheckCommand {
    enum class Kind {
        WaveletSet,
        ParsevalWavelet,
        OrthonormalWavelet,
        SemiOrthogonal,
        ScalingSet,
        ScalingFunction,
    };
    Kind kind{};
    std::vector<std::string> names;
    int order = 0;                                  // wavelet-set only
    WaveletSetMode mode = WaveletSetMode::Parseval; // wavelet-set / scaling-set
    bool operator==(const CheckCommand&) const = default;
};

struct ComputeCommand {
    enum class Kind { Multiplicity, Spectral, Fourier };
    Kind kind{};
    std::vector<std::string> names;
    bool operator==(const ComputeCommand&) const = default;
};

struct BuiltinCommand {
    enum class Kind { Shannon, Ex315a, Ex315b, Ex46 };
    Kind kind{};
    int m = 1;
    char variant = 'A'; // ex46 only
    bool operator==(const BuiltinCommand&) const = default;
};

using Statement = std::variant<SetDef, FuncDef, CheckCommand, ComputeCommand, BuiltinCommand>;

/// A parsed script: the field header plus the ordered statements. Set and
/// function values are resolved during parsing, so every name reference is
/// validated with a source position.
struct Script {
    Field field;
    bool explicit_modulus = false;
    std::vector<Statement> statements;

    bool operator==(const Script& other) const {
        return field == other.field && statements == other.statements;
    }
};

Script parse_script(const std::string& text);

/// Canonical text form; parsing it again yields an identical Script.
std::string print_script(const Script& script);

struct RunOptions {
    int window = 4;      // enumeration depth for report windows
    bool strict = false; // stop at the first failed check
    bool approx = false; // add non-authoritative decimal renderings
};

/// Executes the commands in order, streaming one JSON object per record to
/// json_out and a short human-readable line to human_out. Returns 0 when
/// every check passed and 1 otherwise.
int run_script(const Script& script, std::ostream& json_out, std::ostream& human_out,
               const RunOptions& options);

} // namespace lfpc
