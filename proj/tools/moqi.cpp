#include "moqi/cli.hpp"

int main(int argc, char** argv) { return moqi::cli_main(argc, argv); }
