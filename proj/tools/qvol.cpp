#include <iostream>

#include "qvol/cli.hpp"

int main(int argc, char ** argv)
{
    std::vector<std::string> args(argv + 1, argv + argc);
    return qvol::cli::run(args, std::cout, std::cerr);
}
