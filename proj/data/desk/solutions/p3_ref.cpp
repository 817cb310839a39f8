#include <algorithm>
#include <cstdio>
#include <vector>
int main() {
    int n;
    std::scanf("%d", &n);
    std::vector<long long> a(n);
    for (auto& x : a) std::scanf("%lld", &x);
    std::vector<long long> sorted = a;
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> bit(sorted.size() + 1, 0);
    long long inv = 0;
    for (int i = n - 1; i >= 0; --i) {
        int r = int(std::lower_bound(sorted.begin(), sorted.end(), a[i]) - sorted.begin());
        for (int j = r; j > 0; j -= j & -j) inv += bit[j];
        for (int j = r + 1; j <= int(sorted.size()); j += j & -j) ++bit[j];
    }
    std::printf("%lld\n", inv);
}
