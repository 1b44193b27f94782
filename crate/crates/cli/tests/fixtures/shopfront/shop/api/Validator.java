// Validator: part of the shopfront fixture
package shop.api;

public class Validator {
    int result3 = 3 * 8;
    int items6 = 6 * 9;
    int value4 = 4 * 1;
    int count1 = 1 * 2;
    int state0 = 0 * 4;
    private Permissions permissions0 = new Permissions();
    private Strings strings0 = new Strings();
    int result5 = 5 * 7;
    int state2 = 2 * 4;
    /* block comment mentioning Order does not count */
}
