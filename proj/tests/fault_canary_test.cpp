// Built against a copy of the chain calculus whose vertex coboundary flips
// one bit. The selfcheck has to notice.

#include "overlap/selfcheck.hpp"

#include <iostream>

int main()
{
    const auto result = overlap::run_selfcheck(4, 0, 2);
    if (result.passed()) {
        std::cout << "selfcheck passed on a faulty coboundary\n";
        return 1;
    }
    std::cout << "selfcheck caught the fault: " << *result.first_failure() << '\n';
    return 0;
}
