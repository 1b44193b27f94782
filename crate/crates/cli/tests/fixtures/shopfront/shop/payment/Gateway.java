// Gateway: part of the shopfront fixture
package shop.payment;

public class Gateway {
    private Registry registry0 = new Registry();
    int flag2 = 2 * 2;
    int state5 = 5 * 5;
    private CardCheck cardcheck0 = new CardCheck();
    int buffer0 = 0 * 9;
    int count3 = 3 * 4;
    private Money money0 = new Money();
    int count4 = 4 * 2;
    int value6 = 6 * 3;
    int name1 = 1 * 5;
    private Money money1 = new Money();
    private Log log0 = new Log();
    /* block comment mentioning Order does not count */
}
