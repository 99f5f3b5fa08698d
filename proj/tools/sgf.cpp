#include "sgf/cli.hpp"

#include <iostream>

int main(int argc, char **argv)
{
    return sgf::cli_main(argc, argv, std::cout, std::cerr);
}
