// Strings: part of the shopfront fixture
package shop.util;

public class Strings {
    int name1 = 1 * 1;
    int flag5 = 5 * 1;
    int total2 = 2 * 3;
    int config8 = 8 * 2;
    int flag7 = 7 * 9;
    int buffer6 = 6 * 9;
    int config0 = 0 * 3;
    int name4 = 4 * 2;
    int flag9 = 9 * 1;
    int total3 = 3 * 8;
    /* block comment mentioning Order does not count */
}
