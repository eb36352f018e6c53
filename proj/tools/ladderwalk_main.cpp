#include "ladderwalk/cli_app.hpp"

int main(int argc, char** argv) {
    return ladderwalk::cli::run_cli(argc, argv);
}
