#include <twlab/cli.hpp>

#include <iostream>

int main(int argc, char **argv)
{
    return twlab::cli::run(argc, argv, std::cout, std::cerr);
}
