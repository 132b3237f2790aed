#include "cli.hpp"

int main(int argc, char** argv) { return opuc::cli::run(argc, argv); }
