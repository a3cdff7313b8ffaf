#include "bodycenters/cli.hpp"

int main(int argc, char** argv) { return bodycenters::cli::run(argc, argv); }
