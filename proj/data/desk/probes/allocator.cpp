#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <vector>
int main() {
    std::vector<char*> blocks;
    for (int i = 0; i < 4096; ++i) {
        char* p = static_cast<char*>(std::malloc(1 << 20));
        if (!p) return 3;
        std::memset(p, 1, 1 << 20);
        blocks.push_back(p);
    }
    std::printf("%zu\n", blocks.size());
}
