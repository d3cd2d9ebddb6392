#include "sconv/cli.hpp"

int main(int argc, char** argv) { return sconv::cli::run(argc, argv); }
