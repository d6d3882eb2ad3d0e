#include <string>
#include <vector>

#include "frontlab_cli/cli.hpp"

int main(int argc, char** argv) {
    return frontlab::cli::run_command(
        std::vector<std::string>(argv + 1, argv + argc));
}
