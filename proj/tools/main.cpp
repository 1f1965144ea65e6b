#include "tmatch/cli.hpp"

#include <iostream>

int main(int argc, char** argv)
{
    return tmatch::cli_dispatch(argc, argv, std::cin, std::cout, std::cerr);
}
