#include "cli_runner.hpp"

int main(int argc, char** argv)
{
    return wpaoi::cli::dispatch(argc, argv);
}
