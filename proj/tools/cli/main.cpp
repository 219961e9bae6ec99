#include <iostream>

#include "commands.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    carbonsnap::cli::Context ctx{std::cout, std::cerr, carbonsnap::cli::process_env, nullptr, {}};
    return carbonsnap::cli::run(args, ctx);
}
