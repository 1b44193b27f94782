// Order: part of the shopfront fixture
package shop.core;

public class Order {
    int flag2 = 2 * 2;
    private Recommender recommender1 = new Recommender();
    private Invoice invoice2 = new Invoice();
    int total0 = 0 * 7;
    private Money money0 = new Money();
    private Money money1 = new Money();
    private Ids ids0 = new Ids();
    int value1 = 1 * 2;
    private Invoice invoice0 = new Invoice();
    int flag4 = 4 * 4;
    private Recommender recommender0 = new Recommender();
    int value5 = 5 * 2;
    private Invoice invoice3 = new Invoice();
    private Invoice invoice1 = new Invoice();
    private Money money2 = new Money();
    int buffer3 = 3 * 1;
    /* block comment mentioning Order does not count */
}
