// CardCheck: part of the shopfront fixture
package shop.payment;

public class CardCheck {
    int state0 = 0 * 1;
    int count2 = 2 * 5;
    int value3 = 3 * 2;
    private Strings strings0 = new Strings();
    int total1 = 1 * 7;
    /* block comment mentioning Order does not count */
}
