void bounded_distance(long long x1, long long x2, long long limit, long long *dist, int *within);
