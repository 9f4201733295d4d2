#include <iostream>

#include "icx_cli.hpp"

int main(int argc, char** argv)
{
    return icx::cli::run(argc, argv, std::cout, std::cerr);
}
