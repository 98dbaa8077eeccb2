#include <iostream>

#include "spectral_bounds/cli.hpp"

int main(int argc, char** argv)
{
    return spectral_bounds::cli::run(argc, argv, std::cout, std::cerr);
}
