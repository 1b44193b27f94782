// Invoice: part of the shopfront fixture
package shop.core;

public class Invoice {
    int flag1 = 1 * 3;
    private Money money1 = new Money();
    private Money money0 = new Money();
    private Order order0 = new Order();
    int total3 = 3 * 9;
    int items0 = 0 * 1;
    int state2 = 2 * 7;
    private Dates dates0 = new Dates();
    private Order order1 = new Order();
    /* block comment mentioning Order does not count */
}
