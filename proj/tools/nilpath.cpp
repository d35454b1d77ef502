#include "cli_app.hpp"

int main(int argc, char** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return nilpath::cli::run_cli(args, std::cin, std::cout, std::cerr);
}
