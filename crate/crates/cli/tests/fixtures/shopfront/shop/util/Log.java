// Log: part of the shopfront fixture
package shop.util;

public class Log {
    int buffer3 = 3 * 6;
    int count4 = 4 * 6;
    int result0 = 0 * 9;
    int result2 = 2 * 4;
    int result1 = 1 * 6;
    private Dates dates0 = new Dates();
    /* block comment mentioning Order does not count */
}
