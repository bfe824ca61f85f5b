#include "starprod/cli.hpp"

int main(int argc, char** argv) { return starprod::cli::run(argc, argv); }
