#include "mdmimo/cli.hpp"

int main(int argc, char** argv) { return mdmimo::cli::run(argc, argv); }
