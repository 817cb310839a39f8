#include <cstdio>
int main() {
    long long a, b;
    if (std::scanf("%lld %lld", &a, &b) != 2) return 1;
    int s = static_cast<int>(static_cast<unsigned>(a) + static_cast<unsigned>(b));
    std::printf("%d\n", s);
}
