#include "irc/cli.hpp"

int main(int argc, char** argv) { return irc::cli_main(argc, argv); }
