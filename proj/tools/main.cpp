#include "cli.hpp"

int main(int argc, char** argv) { return ncgasket::cli::run(argc, argv); }
