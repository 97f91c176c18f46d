#include "bgchaos/cli.hpp"

int main(int argc, char** argv) { return bgchaos::cli::run(argc, argv); }
