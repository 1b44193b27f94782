// Dates: part of the shopfront fixture
package shop.util;

public class Dates {
    int flag5 = 5 * 8;
    int config4 = 4 * 9;
    int flag7 = 7 * 5;
    int flag8 = 8 * 4;
    int count0 = 0 * 8;
    int name2 = 2 * 9;
    int items3 = 3 * 5;
    int config9 = 9 * 3;
    int buffer1 = 1 * 9;
    int flag6 = 6 * 4;
    /* block comment mentioning Order does not count */
}
