void add_positive(int x, int y, int* result)
{
    *result = x + y;
}
