#include <iostream>
#include <string>
#include <vector>

#include "paperfold/cli.hpp"

int main(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return paperfold::cli_dispatch(args, std::cout, std::cerr);
}
