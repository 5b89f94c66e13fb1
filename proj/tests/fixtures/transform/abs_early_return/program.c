#include <stdio.h>
#include <stdlib.h>
int main() {
    long x;
    scanf("%ld", &x);
    if (x < 0) {
        printf("%ld\n", -x);
        return 0;
    }
    printf("%ld\n", x);
    return 0;
}
