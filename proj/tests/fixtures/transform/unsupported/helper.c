#include <stdio.h>
static int twice(int v) { return 2 * v; }
int main()
{
    int n;
    scanf("%d", &n);
    printf("%d\n", twice(n));
    return 0;
}
