/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#ifndef GOWERS_GUARD_GOWERS_COLOURING_HH
#define GOWERS_GUARD_GOWERS_COLOURING_HH 1

#include <gowers/fin.hh>

#include <functional>
#include <memory>
#include <string>
#include <string_view>

namespace gowers
{
    /**
     * An r-colouring of canonical serialisations. Objects of every domain are
     * coloured through their key: elements `k:n:[...]`, d-tuples joined by ';',
     * subsets `{1,3}`, subset tuples `({1},{})`, fan maps as written by the fans
     * module. Answers are memoised, so a source is queried at most once per key.
     *
     * Copies share the memo and the source. Safe to call from several threads.
     */
    class Colouring
    {
    public:
        using Function = std::function<int(const std::string &)>;

    private:
        struct Shared;
        std::shared_ptr<Shared> _shared;

        explicit Colouring(std::shared_ptr<Shared>);

    public:
        /// `const:<c>`, `supp-parity`, `max-pos-mod:<r>`, `type-hash:<r>`, `card-parity`.
        static auto builtin(std::string_view name, int colours) -> Colouring;

        /// JSON `{"colors": r, "width": N, "default": c, "table": {key: c}}`. Element
        /// keys narrower than N are padded with zeros before lookup.
        static auto table(const std::string & json_text) -> Colouring;
        static auto table_file(const std::string & path) -> Colouring;

        /// Line protocol with a child process: one key per line out, one colour per line back.
        static auto exec(const std::string & command, int colours) -> Colouring;

        static auto function(int colours, Function f, std::string description = "function") -> Colouring;

        /// `builtin:<name>`, `table:<file>` or `exec:<cmd>`.
        static auto from_spec(std::string_view spec, int colours) -> Colouring;

        [[nodiscard]] auto colours() const -> int;
        [[nodiscard]] auto description() const -> const std::string &;

        /// Throws OracleError if the source fails or answers outside 1..r.
        auto operator()(const std::string & key) const -> int;

        auto operator()(const FinElement & e) const -> int;
        auto operator()(const BlockSequence & b) const -> int;

        /// Adapter for span_monochromatic.
        [[nodiscard]] auto objects() const -> ObjectColouring;

        /// Number of distinct keys answered so far.
        [[nodiscard]] auto queries() const -> std::size_t;
    };

    /// 64-bit FNV-1a.
    auto fnv1a(std::string_view text) -> std::uint64_t;
}

#endif
