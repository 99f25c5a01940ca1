#include "bgg/app.hpp"

int main(int argc, char** argv) { return bgg::app::main_entry(argc, argv); }
