/* vim: set sw=4 sts=4 et foldmethod=syntax : */

#include <gowers/colouring.hh>

#include <json.hpp>

#include <algorithm>
#include <charconv>
#include <csignal>
#include <cstdlib>
#include <fstream>
#include <mutex>
#include <optional>
#include <shared_mutex>
#include <sstream>
#include <unordered_map>
#include <vector>

#include <sys/types.h>
#include <sys/wait.h>
#include <unistd.h>

using std::optional;
using std::string;
using std::string_view;
using std::vector;

namespace gowers
{
    using std::to_string;

    auto fnv1a(string_view text) -> std::uint64_t
    {
        std::uint64_t h = 14695981039346656037ull;
        for (unsigned char ch : text) {
            h ^= ch;
            h *= 1099511628211ull;
        }
        return h;
    }

    namespace
    {
        auto parse_int(string_view text) -> int
        {
            int result = 0;
            auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), result);
            if (ec != std::errc{} || ptr != text.data() + text.size())
                throw ParseError{"expected an integer, got '" + string{text} + "'"};
            return result;
        }

        auto split(string_view text, char separator) -> vector<string_view>
        {
            vector<string_view> result;
            std::size_t start = 0;
            while (true) {
                auto pos = text.find(separator, start);
                if (pos == string_view::npos) {
                    result.push_back(text.substr(start));
                    return result;
                }
                result.push_back(text.substr(start, pos - start));
                start = pos + 1;
            }
        }

        enum class Domain
        {
            fin,
            subset,
            subset_tuple,
            other
        };

        auto domain_of(string_view key) -> Domain
        {
            if (key.starts_with("({") || key == "()")
                return Domain::subset_tuple;
            if (key.starts_with('{'))
                return Domain::subset;
            if (key.find('>') != string_view::npos)
                return Domain::other;
            if (key.find(":[") != string_view::npos)
                return Domain::fin;
            return Domain::other;
        }

        auto parse_fin(string_view key) -> vector<FinElement>
        {
            vector<FinElement> result;
            for (auto part : split(key, ';'))
                result.push_back(parse_element(part));
            return result;
        }

        auto parse_subset(string_view text) -> vector<int>
        {
            if (text.size() < 2 || text.front() != '{' || text.back() != '}')
                throw ParseError{"malformed subset '" + string{text} + "'"};
            vector<int> result;
            auto body = text.substr(1, text.size() - 2);
            if (! body.empty())
                for (auto part : split(body, ','))
                    result.push_back(parse_int(part));
            return result;
        }

        auto parse_subset_tuple(string_view text) -> vector<vector<int>>
        {
            if (text.size() < 2 || text.front() != '(' || text.back() != ')')
                throw ParseError{"malformed subset tuple '" + string{text} + "'"};
            vector<vector<int>> result;
            auto body = text.substr(1, text.size() - 2);
            std::size_t pos = 0;
            while (pos < body.size()) {
                auto close = body.find('}', pos);
                if (close == string_view::npos)
                    throw ParseError{"malformed subset tuple '" + string{text} + "'"};
                result.push_back(parse_subset(body.substr(pos, close - pos + 1)));
                pos = close + 1;
                if (pos < body.size() && body[pos] == ',')
                    ++pos;
            }
            return result;
        }

        auto all_subsets(string_view key, Domain domain) -> vector<vector<int>>
        {
            if (domain == Domain::subset)
                return {parse_subset(key)};
            vector<vector<int>> result;
            for (auto part : split(key, ';'))
                for (auto & s : parse_subset_tuple(part))
                    result.push_back(std::move(s));
            return result;
        }

        auto run_pattern(const FinElement & e) -> string
        {
            string result = "(";
            int last = 0;
            for (int x = 0; x < e.width(); ++x)
                if (e[x] != 0 && e[x] != last) {
                    if (last != 0)
                        result += ',';
                    result += to_string(e[x]);
                    last = e[x];
                }
            return result + ")";
        }

        auto builtin_function(string_view name, int colours) -> Colouring::Function
        {
            auto colon = name.find(':');
            auto family = name.substr(0, colon);
            optional<int> parameter;
            if (colon != string_view::npos)
                parameter = parse_int(name.substr(colon + 1));

            if (family == "const") {
                if (! parameter || *parameter < 1 || *parameter > colours)
                    throw InvalidArgument{"const:<c> needs 1 <= c <= " + to_string(colours)};
                int c = *parameter;
                return [c](const string &) { return c; };
            }
            if (family == "supp-parity" || family == "card-parity") {
                bool components = family == "supp-parity";
                return [components](const string & key) {
                    auto domain = domain_of(key);
                    int count = 0;
                    if (domain == Domain::fin) {
                        for (const auto & e : parse_fin(key))
                            count += e.support_size();
                    }
                    else if (domain == Domain::subset || domain == Domain::subset_tuple) {
                        for (const auto & s : all_subsets(key, domain))
                            count += components && domain == Domain::subset_tuple ? ! s.empty() : static_cast<int>(s.size());
                    }
                    else
                        throw OracleError{"parity colourings are not defined on '" + key + "'"};
                    return count % 2 + 1;
                };
            }
            if (family == "max-pos-mod" || family == "type-hash") {
                if (! parameter || *parameter < 1)
                    throw InvalidArgument{string{family} + ":<r> needs r >= 1"};
                int r = *parameter;
                if (family == "type-hash")
                    return [r](const string & key) {
                        if (domain_of(key) != Domain::fin)
                            return static_cast<int>(fnv1a(key) % r) + 1;
                        string pattern;
                        for (const auto & e : parse_fin(key))
                            pattern += run_pattern(e) + ";";
                        return static_cast<int>(fnv1a(pattern) % r) + 1;
                    };
                return [r](const string & key) {
                    auto domain = domain_of(key);
                    int position = 0;
                    if (domain == Domain::fin) {
                        int best = 0;
                        for (const auto & e : parse_fin(key))
                            for (int x = 0; x < e.width(); ++x)
                                if (e[x] > best) {
                                    best = e[x];
                                    position = x + 1;
                                }
                    }
                    else if (domain == Domain::subset || domain == Domain::subset_tuple) {
                        for (const auto & s : all_subsets(key, domain))
                            for (auto x : s)
                                position = std::max(position, x);
                    }
                    else
                        throw OracleError{"max-pos-mod is not defined on '" + key + "'"};
                    return position % r + 1;
                };
            }
            throw InvalidArgument{"unknown builtin colouring '" + string{name} + "'"};
        }

        struct TableSource
        {
            int width = 0;
            optional<int> fallback;
            std::unordered_map<string, int> entries;

            auto normalise(const string & key) const -> string
            {
                if (domain_of(key) != Domain::fin)
                    return key;
                string result;
                for (const auto & e : parse_fin(key)) {
                    if (! result.empty())
                        result += ';';
                    result += to_string(e.width() < width ? e.rewidth(width) : e);
                }
                return result;
            }

            auto lookup(const string & key) const -> int
            {
                auto it = entries.find(normalise(key));
                if (it != entries.end())
                    return it->second;
                if (fallback)
                    return *fallback;
                throw OracleError{"colour table has no entry for '" + key + "' and no default"};
            }
        };

        auto command_available(const string & command) -> bool
        {
            std::istringstream in{command};
            string program;
            in >> program;
            if (program.empty())
                return false;
            if (program.find('/') != string::npos)
                return ::access(program.c_str(), X_OK) == 0;
            const char * path = std::getenv("PATH");
            if (! path)
                return false;
            for (auto dir : split(path, ':')) {
                string candidate = string{dir.empty() ? "." : dir} + "/" + program;
                if (::access(candidate.c_str(), X_OK) == 0)
                    return true;
            }
            return false;
        }

        class ExecSource
        {
        private:
            string _command;
            std::mutex _mutex;
            pid_t _pid = -1;
            int _to_child = -1;
            int _from_child = -1;
            string _buffer;

            auto start() -> void
            {
                if (! command_available(_command))
                    throw OracleError{"missing colouring source: cannot execute '" + _command + "'"};
                int down[2], up[2];
                if (::pipe(down) != 0 || ::pipe(up) != 0)
                    throw OracleError{"cannot create pipes for '" + _command + "'"};
                std::signal(SIGPIPE, SIG_IGN);
                _pid = ::fork();
                if (_pid < 0)
                    throw OracleError{"cannot fork for '" + _command + "'"};
                if (_pid == 0) {
                    ::dup2(down[0], STDIN_FILENO);
                    ::dup2(up[1], STDOUT_FILENO);
                    ::close(down[0]);
                    ::close(down[1]);
                    ::close(up[0]);
                    ::close(up[1]);
                    ::execl("/bin/sh", "sh", "-c", _command.c_str(), static_cast<char *>(nullptr));
                    ::_exit(127);
                }
                ::close(down[0]);
                ::close(up[1]);
                _to_child = down[1];
                _from_child = up[0];
            }

            auto read_line() -> optional<string>
            {
                while (true) {
                    auto newline = _buffer.find('\n');
                    if (newline != string::npos) {
                        auto line = _buffer.substr(0, newline);
                        _buffer.erase(0, newline + 1);
                        return line;
                    }
                    char chunk[4096];
                    auto got = ::read(_from_child, chunk, sizeof(chunk));
                    if (got <= 0)
                        return std::nullopt;
                    _buffer.append(chunk, got);
                }
            }

        public:
            explicit ExecSource(string command) :
                _command(std::move(command))
            {
            }

            ~ExecSource()
            {
                if (_to_child >= 0)
                    ::close(_to_child);
                if (_from_child >= 0)
                    ::close(_from_child);
                if (_pid > 0)
                    ::waitpid(_pid, nullptr, 0);
            }

            auto query(const string & key) -> int
            {
                std::lock_guard guard{_mutex};
                if (_pid < 0)
                    start();
                string request = key + "\n";
                std::size_t sent = 0;
                while (sent < request.size()) {
                    auto wrote = ::write(_to_child, request.data() + sent, request.size() - sent);
                    if (wrote <= 0)
                        throw OracleError{"oracle '" + _command + "' closed its input while asked '" + key + "'"};
                    sent += wrote;
                }
                auto line = read_line();
                if (! line)
                    throw OracleError{"oracle '" + _command + "' gave no answer for '" + key + "'"};
                while (! line->empty() && (line->back() == '\r' || line->back() == ' '))
                    line->pop_back();
                try {
                    return parse_int(*line);
                }
                catch (const ParseError &) {
                    throw OracleError{"oracle '" + _command + "' answered '" + *line + "' for '" + key + "'"};
                }
            }
        };
    }

    struct Colouring::Shared
    {
        int colours;
        string description;
        Function source;
        mutable std::shared_mutex mutex;
        mutable std::unordered_map<string, int> memo;
    };

    Colouring::Colouring(std::shared_ptr<Shared> shared) :
        _shared(std::move(shared))
    {
    }

    auto Colouring::function(int colours, Function f, string description) -> Colouring
    {
        if (colours < 1)
            throw InvalidArgument{"a colouring needs at least one colour"};
        auto shared = std::make_shared<Shared>();
        shared->colours = colours;
        shared->description = std::move(description);
        shared->source = std::move(f);
        return Colouring{std::move(shared)};
    }

    auto Colouring::builtin(string_view name, int colours) -> Colouring
    {
        return function(colours, builtin_function(name, colours), "builtin:" + string{name});
    }

    auto Colouring::table(const string & json_text) -> Colouring
    {
        nlohmann::json doc;
        try {
            doc = nlohmann::json::parse(json_text);
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError{string{"colour table is not valid JSON: "} + e.what()};
        }
        auto source = std::make_shared<TableSource>();
        int colours = 0;
        try {
            colours = doc.at("colors").get<int>();
            source->width = doc.value("width", 0);
            if (doc.contains("default"))
                source->fallback = doc.at("default").get<int>();
            for (const auto & [key, value] : doc.at("table").items())
                source->entries.emplace(source->normalise(key), value.get<int>());
        }
        catch (const nlohmann::json::exception & e) {
            throw ParseError{string{"malformed colour table: "} + e.what()};
        }
        return function(colours, [source](const string & key) { return source->lookup(key); }, "table");
    }

    auto Colouring::table_file(const string & path) -> Colouring
    {
        std::ifstream in{path};
        if (! in)
            throw OracleError{"missing colouring source: cannot read table '" + path + "'"};
        std::stringstream text;
        text << in.rdbuf();
        auto result = table(text.str());
        result._shared->description = "table:" + path;
        return result;
    }

    auto Colouring::exec(const string & command, int colours) -> Colouring
    {
        if (! command_available(command))
            throw OracleError{"missing colouring source: cannot execute '" + command + "'"};
        auto source = std::make_shared<ExecSource>(command);
        return function(colours, [source](const string & key) { return source->query(key); }, "exec:" + command);
    }

    auto Colouring::from_spec(string_view spec, int colours) -> Colouring
    {
        if (spec.starts_with("builtin:"))
            return builtin(spec.substr(8), colours);
        if (spec.starts_with("table:")) {
            auto result = table_file(string{spec.substr(6)});
            if (colours > 0 && result.colours() != colours)
                throw InvalidArgument{"table has " + to_string(result.colours()) + " colours, expected " + to_string(colours)};
            return result;
        }
        if (spec.starts_with("exec:"))
            return exec(string{spec.substr(5)}, colours);
        throw InvalidArgument{"colouring must be builtin:<name>, table:<file> or exec:<cmd>, got '" + string{spec} + "'"};
    }

    auto Colouring::colours() const -> int
    {
        return _shared->colours;
    }

    auto Colouring::description() const -> const string &
    {
        return _shared->description;
    }

    auto Colouring::operator()(const string & key) const -> int
    {
        {
            std::shared_lock lock{_shared->mutex};
            auto it = _shared->memo.find(key);
            if (it != _shared->memo.end())
                return it->second;
        }
        int c = _shared->source(key);
        if (c < 1 || c > _shared->colours)
            throw OracleError{"colour " + to_string(c) + " for '" + key + "' is outside 1.." + to_string(_shared->colours)};
        std::unique_lock lock{_shared->mutex};
        auto [it, inserted] = _shared->memo.emplace(key, c);
        if (! inserted && it->second != c)
            throw OracleError{"colouring answered '" + key + "' inconsistently"};
        return c;
    }

    auto Colouring::operator()(const FinElement & e) const -> int
    {
        return (*this)(to_string(e));
    }

    auto Colouring::operator()(const BlockSequence & b) const -> int
    {
        return (*this)(to_string(b));
    }

    auto Colouring::objects() const -> ObjectColouring
    {
        auto self = *this;
        return [self](const BlockSequence & b) { return self(b); };
    }

    auto Colouring::queries() const -> std::size_t
    {
        std::shared_lock lock{_shared->mutex};
        return _shared->memo.size();
    }
}
