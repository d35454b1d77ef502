#ifndef NILPATH_TOOLS_CLI_APP_HPP
#define NILPATH_TOOLS_CLI_APP_HPP

#include <nilpath/nilpath.hpp>

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace nilpath::cli {

enum ExitCode : int { kSuccess = 0, kNegative = 1, kInputError = 2, kGuardTripped = 3 };

inline int exit_code_for(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InternalGuard:
    case ErrorKind::SizeCapExceeded:
    case ErrorKind::LiftDepthExceeded:
    case ErrorKind::DetourSearchExhausted:
        return kGuardTripped;
    default:
        return kInputError;
    }
}

struct Io {
    std::istream& in;
    std::ostream& out;
    std::ostream& err;
};

inline std::string read_source(const std::string& name, std::istream& in)
{
    std::ostringstream buf;
    if (name == "-") {
        buf << in.rdbuf();
        return buf.str();
    }
    std::ifstream file(name);
    if (!file)
        fail(ErrorKind::ParseError, "cannot open '" + name + "'");
    buf << file.rdbuf();
    return buf.str();
}

inline Json read_json(const std::string& name, std::istream& in)
{
    const std::string text = read_source(name, in);
    try {
        return Json::parse(text);
    } catch (const Json::exception& e) {
        fail(ErrorKind::ParseError, "'" + name + "' is not valid JSON: " + e.what());
    }
}

inline Matrix read_matrix(const std::string& name, std::istream& in)
{
    return matrix_from_json(read_json(name, in));
}

inline std::int64_t size_cap_from_env()
{
    const char* raw = std::getenv("NILPATH_SIZE_CAP");
    if (raw == nullptr || *raw == '\0')
        return kDefaultSizeCap;
    const auto cap = detail::parse_int(raw, "NILPATH_SIZE_CAP");
    if (cap < 0)
        fail(ErrorKind::ParseError, "NILPATH_SIZE_CAP must be non-negative");
    return cap;
}

inline VerificationMode parse_mode(const std::string& s)
{
    if (s == "sampled")
        return VerificationMode::Sampled;
    if (s == "certified")
        return VerificationMode::Certified;
    fail(ErrorKind::ParseError, "mode must be 'sampled' or 'certified'");
}

inline void emit(std::ostream& out, const Json& j)
{
    out << j.dump(2) << '\n';
}

inline Matrix nilpotent_input(const std::string& name, std::istream& in)
{
    Matrix m = read_matrix(name, in);
    require(m.is_square(), ErrorKind::NotSquare, "matrix must be square");
    return m;
}

inline int cmd_profile(const std::string& file, Io io)
{
    const Matrix m = nilpotent_input(file, io.in);
    const Profile prof = nilpotent_profile(m);
    emit(io.out, Json{{"profile", to_json(prof)}, {"string", prof.str()}, {"size", size(prof)}});
    return kSuccess;
}

inline int cmd_root(const std::string& file, std::int64_t p, const std::string& wanted, std::int64_t cap, Io io)
{
    require(p >= 1, ErrorKind::InvalidArgument, "--p must be positive");
    const Matrix m = nilpotent_input(file, io.in);
    const Profile target = nilpotent_profile(m);
    std::optional<Profile> root_profile;
    if (!wanted.empty()) {
        const Profile requested = Profile::parse(wanted);
        if (size(requested) == size(target) && profile_power(requested, p) == target)
            root_profile = requested;
    } else {
        root_profile = find_root_profile(target, p, cap);
    }
    if (!root_profile) {
        emit(io.out, Json{{"root", nullptr}, {"target", target.str()}});
        return kNegative;
    }
    const Matrix x0 = jordan_model(root_profile->cells());
    const Matrix s = similarity_witness(matrix_pow(x0, static_cast<std::size_t>(p)), m);
    const Matrix x = s * x0 * inverse(s);
    require(matrix_pow(x, static_cast<std::size_t>(p)) == m, ErrorKind::InternalGuard, "constructed root fails X^p = M");
    emit(io.out, Json{{"profile", to_json(*root_profile)}, {"root", to_json(x)}});
    return kSuccess;
}

inline int cmd_graph(std::int64_t p, const std::string& matrix_file, const std::string& profile_text, bool dot,
                     std::int64_t cap, Io io)
{
    require(p >= 1, ErrorKind::InvalidArgument, "--p must be positive");
    if (matrix_file.empty() == profile_text.empty())
        fail(ErrorKind::ParseError, "graph needs exactly one of --matrix or --profile");
    const Profile target = matrix_file.empty() ? Profile::parse(profile_text)
                                               : nilpotent_profile(nilpotent_input(matrix_file, io.in));
    const ProfileGraph g = build_graph(target, p, cap);
    if (dot)
        io.out << export_dot(g);
    else
        emit(io.out, to_json(g));
    return kSuccess;
}

inline int cmd_chain(std::int64_t p, const std::string& from, const std::string& to, Io io)
{
    const Profile m = Profile::parse(from), mp = Profile::parse(to);
    try {
        emit(io.out, to_json(profile_chain(m, mp, p), p));
    } catch (const Error& e) {
        if (e.kind() != ErrorKind::PowerMismatch)
            throw;
        emit(io.out, Json{{"chain", nullptr}, {"reason", e.what()}});
        return kNegative;
    }
    return kSuccess;
}

inline int cmd_connect(std::int64_t p, const std::string& a_file, const std::string& x_file, const std::string& y_file,
                       std::size_t samples, VerificationMode mode, std::int64_t cap, Io io)
{
    const Matrix a = read_matrix(a_file, io.in);
    const Matrix x = read_matrix(x_file, io.in);
    const Matrix y = read_matrix(y_file, io.in);
    const RootPath path = connect_roots(a, p, x, y, mode);
    const Certificate cert = verify(path, samples, mode, cap);
    emit(io.out, Json{{"path", to_json(path)}, {"certificate", to_json(cert)}});
    return cert.ok ? kSuccess : kNegative;
}

inline RootPath read_path(const std::string& file, std::istream& in)
{
    Json j = read_json(file, in);
    // accept the full `connect` output as well as a bare path
    if (j.is_object() && j.contains("path") && !j.contains("segments"))
        j = j.at("path");
    return path_from_json(j);
}

inline int cmd_eval(const std::string& file, const std::string& t_text, Io io)
{
    const RootPath path = read_path(file, io.in);
    const Rational t = parse_rational(t_text);
    if (t < 0 || t > 1)
        fail(ErrorKind::InvalidArgument, "--t must lie in [0,1]");
    emit(io.out, to_json(evaluate(path, t)));
    return kSuccess;
}

inline int cmd_verify(const std::string& file, std::size_t samples, VerificationMode mode, std::int64_t cap, Io io)
{
    const RootPath path = read_path(file, io.in);
    const Certificate cert = verify(path, samples, mode, cap);
    emit(io.out, to_json(cert));
    return cert.ok ? kSuccess : kNegative;
}

inline int cmd_solvable(const std::string& zeros, bool inf, const std::string& profile_text, std::int64_t cap, Io io)
{
    ZeroSpec spec;
    spec.has_infinite_zero = inf;
    std::stringstream ss(zeros);
    for (std::string item; std::getline(ss, item, ',');) {
        if (item.find_first_not_of(" \t") == std::string::npos)
            continue;
        const auto mult = detail::parse_int(item, "zero multiplicity");
        if (mult < 1)
            fail(ErrorKind::ParseError, "zero multiplicities must be positive");
        spec.finite_multiplicities.push_back(mult);
    }
    const Profile m = Profile::parse(profile_text);
    const auto witness = is_f_solvable(spec, m, cap);
    if (!witness) {
        emit(io.out, Json{{"solvable", false}});
        return kNegative;
    }
    emit(io.out, Json{{"solvable", true}, {"witness", to_json(*witness)}});
    return kSuccess;
}

/// Runs one CLI invocation; args excludes the program name.
inline int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err)
{
    Io io{in, out, err};
    CLI::App app{"Exact p-th roots of nilpotent matrices and paths between them", "nilpath"};
    app.require_subcommand(1);

    std::string file, t_text, from, to, a_file, x_file, y_file, matrix_file, profile_text, zeros, mode_text = "sampled";
    std::int64_t p = 0;
    std::size_t samples = 100;
    bool dot = false, inf = false;

    auto* profile_cmd = app.add_subcommand("profile", "Jordan profile of a nilpotent matrix");
    profile_cmd->add_option("matrix", file, "matrix JSON file, '-' for stdin")->required();

    auto* root_cmd = app.add_subcommand("root", "a p-th root of a nilpotent matrix");
    root_cmd->add_option("matrix", file, "matrix JSON file, '-' for stdin")->required();
    root_cmd->add_option("--p", p, "exponent")->required();
    root_cmd->add_option("--profile", profile_text, "requested root profile \"k:c,...\"");

    auto* graph_cmd = app.add_subcommand("graph", "graph of root profiles under p-adjacency");
    graph_cmd->add_option("--p", p, "exponent")->required();
    graph_cmd->add_option("--matrix", matrix_file, "target matrix JSON file");
    graph_cmd->add_option("--profile", profile_text, "target profile \"k:c,...\"");
    graph_cmd->add_flag("--dot", dot, "emit Graphviz DOT instead of JSON");

    auto* chain_cmd = app.add_subcommand("chain", "p-chain between two root profiles");
    chain_cmd->add_option("--p", p, "exponent")->required();
    chain_cmd->add_option("--from", from, "start profile")->required();
    chain_cmd->add_option("--to", to, "end profile")->required();

    auto* connect_cmd = app.add_subcommand("connect", "exact path between two p-th roots of A");
    connect_cmd->add_option("--p", p, "exponent")->required();
    connect_cmd->add_option("--a", a_file, "A matrix JSON")->required();
    connect_cmd->add_option("--x", x_file, "start root JSON")->required();
    connect_cmd->add_option("--y", y_file, "end root JSON")->required();
    connect_cmd->add_option("--samples", samples, "verification samples (default 100)");
    connect_cmd->add_option("--mode", mode_text, "sampled or certified");

    auto* eval_cmd = app.add_subcommand("eval-path", "evaluate a path at a rational parameter");
    eval_cmd->add_option("path", file, "path JSON file, '-' for stdin")->required();
    eval_cmd->add_option("--t", t_text, "parameter a/b in [0,1]")->required();

    auto* verify_cmd = app.add_subcommand("verify", "re-verify a path JSON");
    verify_cmd->add_option("path", file, "path JSON file, '-' for stdin")->required();
    verify_cmd->add_option("--samples", samples, "verification samples (default 100)");
    verify_cmd->add_option("--mode", mode_text, "sampled or certified");

    auto* solvable_cmd = app.add_subcommand("solvable", "f(X) = A solvability for nilpotent A");
    solvable_cmd->add_option("--zeros", zeros, "finite zero multiplicities, comma separated")->required();
    solvable_cmd->add_flag("--inf", inf, "f has a zero at infinity");
    solvable_cmd->add_option("--profile", profile_text, "profile of A")->required();

    std::vector<std::string> storage{"nilpath"};
    storage.insert(storage.end(), args.begin(), args.end());
    std::vector<char*> argv;
    for (auto& s : storage)
        argv.push_back(s.data());

    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kSuccess : kInputError;
    }

    try {
        const std::int64_t cap = size_cap_from_env();
        if (*profile_cmd)
            return cmd_profile(file, io);
        if (*root_cmd)
            return cmd_root(file, p, profile_text, cap, io);
        if (*graph_cmd)
            return cmd_graph(p, matrix_file, profile_text, dot, cap, io);
        if (*chain_cmd)
            return cmd_chain(p, from, to, io);
        if (*connect_cmd)
            return cmd_connect(p, a_file, x_file, y_file, samples, parse_mode(mode_text), cap, io);
        if (*eval_cmd)
            return cmd_eval(file, t_text, io);
        if (*verify_cmd)
            return cmd_verify(file, samples, parse_mode(mode_text), cap, io);
        if (*solvable_cmd)
            return cmd_solvable(zeros, inf, profile_text, cap, io);
    } catch (const Error& e) {
        err << "nilpath: " << e.what() << '\n';
        return exit_code_for(e.kind());
    } catch (const Json::exception& e) {
        err << "nilpath: malformed JSON: " << e.what() << '\n';
        return kInputError;
    }
    return kInputError;
}

} // namespace nilpath::cli

#endif // NILPATH_TOOLS_CLI_APP_HPP
