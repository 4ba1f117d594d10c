#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <variant>

#include "tsglm/quad.hpp"
#include "tsglm/tableau.hpp"

namespace tsglm {

/// Parse failure with the 1-based line it happened on.
class ParseError : public std::runtime_error {
public:
    ParseError(int line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    [[nodiscard]] int line() const noexcept { return line_; }

private:
    int line_ = 0;
};

/// A tableau read from a file plus its optional declared-order metadata.
struct LoadedTableau {
    std::variant<Tableau<Rational>, Tableau<Quad>> tableau;
    std::optional<int> declared_order;
    std::optional<int> declared_stage_order;

    [[nodiscard]] bool is_quad() const noexcept {
        return std::holds_alternative<Tableau<Quad>>(tableau);
    }
};

/// Textual key-value tableau format. Scalars encode as "p", "p/q" or
/// "(p/q,r/t)sqrt41"; polynomials as space-separated coefficient lists in
/// ascending degree; omitted coefficient functions are zero. Round-trip is
/// bit-exact: parse(serialize(t)) == t.
[[nodiscard]] std::string serialize(const Tableau<Rational>& t,
                                    std::optional<int> declared_order = {},
                                    std::optional<int> declared_stage_order = {});
[[nodiscard]] std::string serialize(const Tableau<Quad>& t,
                                    std::optional<int> declared_order = {},
                                    std::optional<int> declared_stage_order = {});
[[nodiscard]] std::string serialize(const LoadedTableau& lt);

[[nodiscard]] LoadedTableau parse_tableau(std::istream& in);
[[nodiscard]] LoadedTableau parse_tableau_string(const std::string& text);
[[nodiscard]] LoadedTableau load_tableau_file(const std::string& path);

}  // namespace tsglm
